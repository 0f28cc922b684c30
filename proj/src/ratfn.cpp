// Rational functions in u over Z[s, 1/s], reduced by an exact gcd in Z[s][u].
#include <sstream>

#include "affhall/coeff.hpp"

namespace ah {
namespace {

using ZPoly = std::vector<mpz_class>;  // in s, index = degree
using BPoly = std::vector<ZPoly>;      // in u over Z[s]

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ztrim(a);
    return a;
}

mpz_class zcontent(const ZPoly& a) {
    mpz_class g = 0;
    for (auto& c : a) g = gcd(g, c);
    return g;
}

ZPoly zscale_div(ZPoly a, const mpz_class& d) {
    for (auto& c : a) c /= d;
    return a;
}

ZPoly zprem(ZPoly a, const ZPoly& b) {
    const mpz_class& lb = b.back();
    while (!a.empty() && zdeg(a) >= zdeg(b)) {
        int k = zdeg(a) - zdeg(b);
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (size_t i = 0; i < b.size(); ++i) a[i + static_cast<size_t>(k)] -= la * b[i];
        ztrim(a);
    }
    return a;
}

ZPoly zpp(const ZPoly& a) {
    if (a.empty()) return a;
    mpz_class g = zcontent(a);
    if (a.back() < 0) g = -g;
    return zscale_div(a, g);
}

ZPoly zgcd(const ZPoly& a, const ZPoly& b) {
    if (a.empty()) return zpp(b).empty() ? ZPoly{} : zmul(ZPoly{abs(zcontent(b))}, zpp(b));
    if (b.empty()) return zgcd(b, a);
    mpz_class g = gcd(zcontent(a), zcontent(b));
    ZPoly x = zpp(a), y = zpp(b);
    if (zdeg(x) < zdeg(y)) std::swap(x, y);
    while (!y.empty()) {
        ZPoly r = zprem(x, y);
        x = y;
        y = zpp(r);
    }
    x = zpp(x);
    for (auto& c : x) c *= g;
    return x;
}

ZPoly zdiv_exact(ZPoly a, const ZPoly& b) {
    if (a.empty()) return {};
    ZPoly q(static_cast<size_t>(zdeg(a) - zdeg(b) + 1));
    while (!a.empty()) {
        int k = zdeg(a) - zdeg(b);
        if (k < 0 || a.back() % b.back() != 0) throw Error(Error::Internal, "inexact polynomial division");
        mpz_class c = a.back() / b.back();
        q[static_cast<size_t>(k)] = c;
        for (size_t i = 0; i < b.size(); ++i) a[i + static_cast<size_t>(k)] -= c * b[i];
        ztrim(a);
    }
    ztrim(q);
    return q;
}

void btrim(BPoly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}
int bdeg(const BPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly bcontent(const BPoly& a) {
    ZPoly g;
    for (auto& c : a) g = zgcd(g, c);
    return g;
}

BPoly bdiv_coeffs(BPoly a, const ZPoly& d) {
    for (auto& c : a) c = zdiv_exact(c, d);
    return a;
}

BPoly bprem(BPoly a, const BPoly& b) {
    const ZPoly& lb = b.back();
    while (!a.empty() && bdeg(a) >= bdeg(b)) {
        int k = bdeg(a) - bdeg(b);
        ZPoly la = a.back();
        for (auto& c : a) c = zmul(c, lb);
        for (size_t i = 0; i < b.size(); ++i)
            a[i + static_cast<size_t>(k)] = zsub(a[i + static_cast<size_t>(k)], zmul(la, b[i]));
        btrim(a);
    }
    return a;
}

BPoly bpp(const BPoly& a) {
    if (a.empty()) return a;
    return bdiv_coeffs(a, bcontent(a));
}

BPoly bgcd(const BPoly& a, const BPoly& b) {
    ZPoly c = zgcd(bcontent(a), bcontent(b));
    BPoly x = bpp(a), y = bpp(b);
    if (bdeg(x) < bdeg(y)) std::swap(x, y);
    while (!y.empty()) {
        BPoly r = bprem(x, y);
        x = y;
        y = bpp(r);
    }
    x = bpp(x);
    for (auto& e : x) e = zmul(e, c);
    return x;
}

BPoly bdiv_exact(BPoly a, const BPoly& b) {
    if (a.empty()) return {};
    BPoly q(static_cast<size_t>(bdeg(a) - bdeg(b) + 1));
    while (!a.empty()) {
        int k = bdeg(a) - bdeg(b);
        if (k < 0) throw Error(Error::Internal, "inexact polynomial division");
        ZPoly c = zdiv_exact(a.back(), b.back());
        q[static_cast<size_t>(k)] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + static_cast<size_t>(k)] = zsub(a[i + static_cast<size_t>(k)], zmul(c, b[i]));
        btrim(a);
    }
    btrim(q);
    return q;
}

// p = s^shift * B
BPoly to_bpoly(const UPoly& p, int& shift) {
    shift = 0;
    bool any = false;
    for (auto& c : p.coeffs())
        if (!c.is_zero()) {
            shift = any ? std::min(shift, c.min_exp()) : c.min_exp();
            any = true;
        }
    BPoly r;
    for (auto& c : p.coeffs()) {
        ZPoly z;
        for (auto& [e, v] : c.terms()) {
            size_t i = static_cast<size_t>(e - shift);
            if (z.size() <= i) z.resize(i + 1);
            z[i] = v;
        }
        r.push_back(std::move(z));
    }
    btrim(r);
    return r;
}

UPoly from_bpoly(const BPoly& b, int shift) {
    std::vector<MotCoeff> v;
    for (auto& z : b) {
        MotCoeff c;
        for (size_t i = 0; i < z.size(); ++i) c += MotCoeff::s_pow(static_cast<int>(i) + shift, z[i]);
        v.push_back(c);
    }
    return UPoly(std::move(v));
}

}  // namespace

RatFnU::RatFnU(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

// Reduce by the gcd over Z[s][u], then scale by the unit +-s^k that makes the lowest s-term
// of the lowest-degree denominator coefficient equal to +1. When den(0) is a unit this
// means den(0) = 1.
void RatFnU::normalize() {
    if (den_.is_zero()) throw Error(Error::Malformed, "zero denominator");
    if (num_.is_zero()) {
        den_ = UPoly(MotCoeff(1));
        return;
    }
    int en, ed;
    BPoly n = to_bpoly(num_, en), d = to_bpoly(den_, ed);
    BPoly g = bgcd(n, d);
    n = bdiv_exact(n, g);
    d = bdiv_exact(d, g);
    num_ = from_bpoly(n, en - ed);
    den_ = from_bpoly(d, 0);
    const MotCoeff& low = den_.coeffs()[static_cast<size_t>(den_.low_degree())];
    auto first = *low.terms().begin();
    MotCoeff unit = MotCoeff::s_pow(first.first, first.second > 0 ? 1 : -1);
    std::vector<MotCoeff> nv, dv;
    for (auto& c : num_.coeffs()) nv.push_back(c.div_unit(unit));
    for (auto& c : den_.coeffs()) dv.push_back(c.div_unit(unit));
    num_ = UPoly(std::move(nv));
    den_ = UPoly(std::move(dv));
}

RatFnU operator+(const RatFnU& a, const RatFnU& b) {
    return RatFnU(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFnU operator-(const RatFnU& a, const RatFnU& b) {
    return RatFnU(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFnU operator*(const RatFnU& a, const RatFnU& b) { return RatFnU(a.num_ * b.num_, a.den_ * b.den_); }

bool operator==(const RatFnU& a, const RatFnU& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

RatFnU RatFnU::subst_scaled(const MotCoeff& c, int k) const {
    if (k == 1) {
        auto scale = [&](const UPoly& p) {
            std::vector<MotCoeff> v;
            MotCoeff cp(1);
            for (auto& x : p.coeffs()) {
                v.push_back(x * cp);
                cp *= c;
            }
            return UPoly(std::move(v));
        };
        return RatFnU(scale(num_), scale(den_));
    }
    if (k != -1) throw Error(Error::Malformed, "substitution exponent must be +-1");
    if (c.is_zero()) throw Error(Error::Malformed, "division by zero during substitution");
    int dn = num_.degree(), dd = den_.degree();
    UPoly n = num_.is_zero() ? UPoly() : num_.reciprocal_scaled(c, dn);
    UPoly d = den_.reciprocal_scaled(c, dd);
    if (d.is_zero()) throw Error(Error::Malformed, "division by zero during substitution");
    if (dd >= dn) n = n.shift(dd - dn);
    else d = d.shift(dn - dd);
    return RatFnU(n, d);
}

std::vector<MotCoeff> RatFnU::expand(int n) const {
    MotCoeff d0 = den_[0];
    if (!d0.is_unit()) throw Error(Error::Domain, "denominator not invertible at u = 0");
    std::vector<MotCoeff> a;
    for (int k = 0; k <= n; ++k) {
        MotCoeff x = num_[k];
        for (int j = 1; j <= k && j <= den_.degree(); ++j) x -= den_[j] * a[static_cast<size_t>(k - j)];
        a.push_back(x.div_unit(d0));
    }
    return a;
}

std::string RatFnU::str() const {
    std::ostringstream os;
    os << "[" << num_.str() << "] / [" << den_.str() << "]";
    return os.str();
}

void CurveData::validate() const {
    if (genus < 0) throw Error(Error::Malformed, "negative genus");
    if (!phi[0].is_one()) throw Error(Error::Malformed, "curve numerator must have constant term 1");
    if (phi.degree() != 2 * genus) throw Error(Error::Malformed, "curve numerator must have degree 2g");
}

CurveData CurveData::serre_model(int g) {
    UPoly f(std::vector<MotCoeff>{MotCoeff(1), -MotCoeff::s_pow(1)});
    UPoly p(MotCoeff(1));
    for (int i = 0; i < 2 * g; ++i) p = p * f;
    return {g, p};
}

RatFnU zeta_from_curve(const CurveData& c) {
    c.validate();
    UPoly a(std::vector<MotCoeff>{MotCoeff(1), MotCoeff(-1)});
    UPoly b(std::vector<MotCoeff>{MotCoeff(1), -MotCoeff::L()});
    return RatFnU(c.phi, a * b);
}

RatFnU zeta_funceq_residual(const RatFnU& z, int g) {
    RatFnU lhs = z.subst_scaled(MotCoeff::L_pow(-1), -1);
    int k = 2 - 2 * g;
    UPoly mono = UPoly::monomial(std::max(k, 0), MotCoeff::L_pow(1 - g));
    UPoly den = UPoly::monomial(std::max(-k, 0));
    return lhs - RatFnU(mono, den) * z;
}

MotCoeff symmetric_product_measure(const RatFnU& z, int n) {
    if (n < 0) throw Error(Error::Bounds, "symmetric power index must be non-negative");
    return z.expand(n)[static_cast<size_t>(n)];
}

}  // namespace ah
