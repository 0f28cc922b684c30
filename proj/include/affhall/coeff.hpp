#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ah {

class Error : public std::runtime_error {
public:
    enum Kind { Malformed, Domain, Bounds, Window, Internal };
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Laurent polynomial in s with s^2 = L.
class MotCoeff {
public:
    using Terms = std::map<int, mpz_class>;

    MotCoeff() = default;
    MotCoeff(long c);                       // NOLINT
    MotCoeff(const mpz_class& c);           // NOLINT
    static MotCoeff s_pow(int e, const mpz_class& c = 1);
    static MotCoeff L_pow(int e, const mpz_class& c = 1) { return s_pow(2 * e, c); }
    static MotCoeff L() { return s_pow(2); }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const;
    int min_exp() const;
    int max_exp() const;
    mpz_class coeff(int e) const;
    bool only_even() const;
    // true for +-s^k
    bool is_unit() const;

    MotCoeff& operator+=(const MotCoeff& o);
    MotCoeff& operator-=(const MotCoeff& o);
    MotCoeff& operator*=(const MotCoeff& o);
    MotCoeff operator-() const;
    friend MotCoeff operator+(MotCoeff a, const MotCoeff& b) { return a += b; }
    friend MotCoeff operator-(MotCoeff a, const MotCoeff& b) { return a -= b; }
    friend MotCoeff operator*(const MotCoeff& a, const MotCoeff& b);
    friend bool operator==(const MotCoeff& a, const MotCoeff& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MotCoeff& a, const MotCoeff& b) { return !(a == b); }

    MotCoeff shifted(int ds) const;  // multiply by s^ds
    MotCoeff pow(unsigned n) const;
    // exact division by a unit +-s^k
    MotCoeff div_unit(const MotCoeff& u) const;

    // value at L := x (requires even exponents; negative powers require x invertible)
    mpq_class eval_L(const mpq_class& x) const;
    // value at s := x
    mpq_class eval_s(const mpq_class& x) const;

    std::string str() const;

private:
    Terms t_;
    void add_term(int e, const mpz_class& c);
};

struct SpecMode {
    enum Kind { Euler, PointCount, Serre, Generic } kind = Generic;
    long q = 0;
    static SpecMode euler() { return {Euler, 0}; }
    static SpecMode point_count(long q);
    static SpecMode serre() { return {Serre, 0}; }
    static SpecMode generic() { return {Generic, 0}; }
    static SpecMode parse(const std::string& s);
    std::string str() const;
};

bool is_prime(long n);

struct Specialized {
    std::optional<mpz_class> integer;  // euler, point_count
    std::optional<MotCoeff> coeff;      // serre, generic
    std::string str() const;
};

Specialized specialize(const MotCoeff& c, const SpecMode& m);

// Polynomial in u over MotCoeff, index = degree, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<MotCoeff> c);
    UPoly(const MotCoeff& c);  // NOLINT
    static UPoly monomial(int deg, const MotCoeff& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<MotCoeff>& coeffs() const { return c_; }
    MotCoeff operator[](int i) const;
    int low_degree() const;

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const MotCoeff& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    UPoly operator-() const;

    // u^deg * P(c/u) for deg >= degree(P)
    UPoly reciprocal_scaled(const MotCoeff& c, int deg) const;
    UPoly shift(int k) const;  // multiply by u^k, k >= 0

    std::string str(const char* var = "u") const;

private:
    std::vector<MotCoeff> c_;
    void trim();
};

// num/den with den != 0, kept reduced and normalized (see normalize()).
class RatFnU {
public:
    RatFnU() : num_(), den_(MotCoeff(1)) {}
    RatFnU(UPoly num, UPoly den);
    static RatFnU poly(const UPoly& p) { return RatFnU(p, UPoly(MotCoeff(1))); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFnU operator+(const RatFnU& a, const RatFnU& b);
    friend RatFnU operator-(const RatFnU& a, const RatFnU& b);
    friend RatFnU operator*(const RatFnU& a, const RatFnU& b);
    friend bool operator==(const RatFnU& a, const RatFnU& b);

    // z(c * u^k) for k = +-1; u^-1 results are re-expressed as ratios of polynomials.
    RatFnU subst_scaled(const MotCoeff& c, int k) const;

    // Taylor coefficients at u = 0, orders 0..n.
    std::vector<MotCoeff> expand(int n) const;

    std::string str() const;

private:
    UPoly num_, den_;
    void normalize();
};

struct CurveData {
    int genus = 0;
    UPoly phi = UPoly(MotCoeff(1));
    void validate() const;
    static CurveData p1() { return {}; }
    // Serre-type numerator (1 - s u)^{2g}
    static CurveData serre_model(int g);
};

RatFnU zeta_from_curve(const CurveData& c);
RatFnU zeta_funceq_residual(const RatFnU& z, int g);
MotCoeff symmetric_product_measure(const RatFnU& z, int n);

}  // namespace ah
