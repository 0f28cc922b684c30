#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affhall/affine.hpp"

namespace ah {

// Truncated series over the affine coweight lattice. Every exponent lies in
// [gmin, H] by grade; all coefficients of grade <= H are exact.
class LatticeSeries {
public:
    using Terms = std::map<AffCoweight, MotCoeff>;

    LatticeSeries() = default;
    LatticeSeries(RootSystemPtr rs, long gmin, long H);

    static LatticeSeries one(RootSystemPtr rs, long H);
    static LatticeSeries monomial(RootSystemPtr rs, const AffCoweight& x, const MotCoeff& c, long H);

    const RootSystemPtr& rs() const { return rs_; }
    long gmin() const { return gmin_; }
    long H() const { return H_; }
    const Terms& terms() const { return t_; }
    bool empty() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    MotCoeff coeff(const AffCoweight& x) const;

    // adds c t^x if grade(x) lies in the window
    void add_term(const AffCoweight& x, const MotCoeff& c);
    LatticeSeries& operator+=(const LatticeSeries& o);
    LatticeSeries& operator-=(const LatticeSeries& o);
    friend LatticeSeries operator+(LatticeSeries a, const LatticeSeries& b) { return a += b; }
    friend LatticeSeries operator-(LatticeSeries a, const LatticeSeries& b) { return a -= b; }
    LatticeSeries scaled(const MotCoeff& c) const;
    LatticeSeries shifted(const AffCoweight& x) const;  // times t^x
    LatticeSeries truncate(long H) const;
    LatticeSeries with_window(long gmin, long H) const;  // relabel after a sound bound is known
    // exact equality of windows and terms
    friend bool operator==(const LatticeSeries& a, const LatticeSeries& b);

    // canonical order: (grade, central, finite coordinates, loop)
    std::vector<std::pair<AffCoweight, MotCoeff>> canonical() const;
    bool v_homogeneous(long m) const;
    std::set<long> grades() const;

private:
    RootSystemPtr rs_;
    long gmin_ = 0, H_ = 0;
    Terms t_;
    friend LatticeSeries mul(const LatticeSeries&, const LatticeSeries&, std::optional<long>);
};

// product valid to min(Ha + gmin_b, Hb + gmin_a), optionally capped
LatticeSeries mul(const LatticeSeries& a, const LatticeSeries& b, std::optional<long> cap = std::nullopt);
LatticeSeries expand_unit_inverse(RootSystemPtr rs, const MotCoeff& c, const AffCoweight& mu, long H);
// t^mu -> L^{<nu, mu>} t^{w^{-1} mu}; the window becomes the span of the image grades
LatticeSeries weyl_twist_substitute(const LatticeSeries& f, const AffWeylElt& w, const AffWeight& nu);
// affine coweight image of w^{-1} on monomials, used by the substitution (exposed for the checkers)
AffCoweight twist_exponent(const RootSystem& rs, const AffWeylElt& w, const AffCoweight& mu);
LatticeSeries q_layer(const LatticeSeries& f, long c);
// coefficients evaluated at L := x (must be integral)
LatticeSeries eval_L(const LatticeSeries& f, long x);
// coefficientwise specialization producing integer coefficients
std::map<AffCoweight, mpz_class> point_count(const LatticeSeries& f, long q);

// sum of many series; order independent
LatticeSeries sum_all(RootSystemPtr rs, long gmin, long H, std::vector<LatticeSeries> parts);

struct SeriesDiff {
    AffCoweight x;
    MotCoeff lhs, rhs;
};
// first monomial (canonical order) where the two differ within their common window
std::optional<SeriesDiff> first_difference(const LatticeSeries& a, const LatticeSeries& b);

std::string series_to_json(const LatticeSeries& f);
LatticeSeries series_from_json(RootSystemPtr rs, const std::string& js);
std::string series_table(const LatticeSeries& f);
std::string coeff_to_json(const MotCoeff& c);
MotCoeff coeff_from_json(const std::string& js);

// worker count from AFFHALL_WORKERS (default: hardware concurrency, capped at 8)
int worker_count();

}  // namespace ah
