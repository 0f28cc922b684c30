#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affhall/series.hpp"

namespace ah {

// Truncated power series in one variable q (exponents may be negative).
struct QSeries {
    long order = 0;  // exact through q^order
    std::map<long, MotCoeff> c;
    MotCoeff at(long n) const;
    void add(long n, const MotCoeff& v);
    friend bool operator==(const QSeries& a, const QSeries& b) { return a.order == b.order && a.c == b.c; }
};
QSeries qmul(const QSeries& a, const QSeries& b, long order);
QSeries qeval_L(const QSeries& f, long x);
std::string qseries_to_json(const QSeries& f);
std::string qseries_str(const QSeries& f);

// Bits of a functional-equation variant. 0 is the literal statement.
enum FunceqBits : int {
    kSubstInverse = 1,  // substitute with w^{-1} instead of w
    kFlipNu = 2,        // L-shift rho^ - w rho^ replaced by its negative
    kFlipEta = 4,       // prefactor exponent w rho^v - rho^v replaced by its negative
    kNuInverse = 8,     // build the L-shift from w^{-1}
    kEtaInverse = 16,   // build the prefactor exponent from w^{-1}
};
constexpr int kFunceqVariants = 32;
std::string funceq_variant_str(int v);

struct EisParams {
    RootSystemPtr rs;
    TorsorLabel b;
    long H = 0;
    CurveData curve;
    int funceq_variant = 0;
    // evaluate psi at L^{<rho^, a>-1} t^a and use 1 - L^{<rho^, a>+1} t^a in D
    // (the literal product uses t^a and 1 - L^2 t^a)
    bool height_shift = false;
    void validate() const;
};

// L^{m+1} (1-u)/(1-L^2 u)
RatFnU psi_line(long m);
// psi_line(m) at u := t^x, truncated at grade H
LatticeSeries psi_series(RootSystemPtr rs, long m, const AffCoweight& x, long H, bool height_shift = false);

LatticeSeries term_Ew(const EisParams& p, const AffWeylElt& w);
LatticeSeries eisenstein_E(const EisParams& p);

// prod over positive real affine coroots of (1 - l t^a)/(1 - t^a)
LatticeSeries K_series(RootSystemPtr rs, const MotCoeff& l, long H);

enum class HallForm { Definition, Closed };
// Exponent rule for the twisted action in the definition form.
enum class TwistRule { Literal, Opposite, Untwisted };
std::string twist_rule_str(TwistRule r);
LatticeSeries hall_P(const EisParams& p, HallForm form, TwistRule rule = TwistRule::Literal);

LatticeSeries denominator_D(RootSystemPtr rs, const CurveData& curve, long H, bool height_shift = false);
LatticeSeries numerator_N(const EisParams& p);
// E * prod over finite positive coroots of (1 - L^2 z^a) Phi(z^a), for z-supported E
LatticeSeries finite_numerator(const LatticeSeries& E, const CurveData& curve, bool height_shift = false);

struct FunceqReport {
    LatticeSeries residual;  // for the configured variant
    int variant = 0;
    std::vector<int> vanishing;
    long checked = 0;  // monomials inside the overlap window
    std::optional<AffCoweight> first_nonzero;
    bool passed() const { return residual.empty(); }
};
// residual of one variant on the overlap window; throws on an empty overlap
LatticeSeries funceq_residual_variant(const LatticeSeries& N, const AffWeylElt& w, int variant, int genus,
                                      long* checked = nullptr);
FunceqReport funceq_residual(const EisParams& p, const LatticeSeries& N, const AffWeylElt& w);

QSeries theta_zero(const RootSystem& rs, long d, const Vec& f, long Nq);
LatticeSeries theta_full(RootSystemPtr rs, long d, long Ngrade);
QSeries blowup_F(const RootSystem& rs, const TorsorLabel& b, long Nq);

enum class Rendering { Inverse, Direct };  // chi(t^{-1}) or chi(t)
// character of highest weight -b for the dual affine system
LatticeSeries weyl_kac_character(RootSystemPtr rs, const AffCoweight& b, long H, Rendering r, bool imaginary);

// sum of t^{w(b)} over the graded enumeration, stabilizer included
LatticeSeries orbit_sum(RootSystemPtr rs, const AffCoweight& b, long H);

// true when a and b agree on every monomial whose grade both determine exactly
bool agree_on_common_window(const LatticeSeries& a, const LatticeSeries& b);

}  // namespace ah
