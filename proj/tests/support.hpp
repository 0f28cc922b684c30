#pragma once
// Hand-rolled generators and small helpers shared by the test suites.
#include <cstdint>
#include <random>
#include <vector>

#include "affhall/affine.hpp"
#include "affhall/coeff.hpp"
#include "affhall/rootsys.hpp"
#include "affhall/series.hpp"

namespace gen {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
    bool coin() { return range(0, 1) == 1; }
};

// up to `terms` monomials, s-exponents in [-emax, emax], coefficients up to |cmax|
inline ah::MotCoeff coeff(Rng& r, int terms = 4, int emax = 6, long cmax = 20, bool even = false) {
    ah::MotCoeff c;
    int n = static_cast<int>(r.range(0, terms));
    for (int i = 0; i < n; ++i) {
        int e = static_cast<int>(r.range(-emax, emax));
        if (even) e &= ~1;
        c += ah::MotCoeff::s_pow(e, r.range(-cmax, cmax));
    }
    return c;
}

// a big coefficient, to push past machine words
inline ah::MotCoeff big_coeff(Rng& r) {
    mpz_class x = 1;
    for (int i = 0; i < 6; ++i) x = x * 1000003 + r.range(0, 1000000);
    return ah::MotCoeff::s_pow(static_cast<int>(r.range(-4, 4)), r.coin() ? x : mpz_class(-x));
}

inline ah::Vec vec(Rng& r, int n, long lim) {
    ah::Vec v(static_cast<size_t>(n));
    for (auto& x : v) x = r.range(-lim, lim);
    return v;
}

inline ah::AffCoweight coweight(Rng& r, const ah::RootSystem& rs, long lim = 4) {
    return {vec(r, rs.rank(), lim), r.range(-lim, lim), r.range(-lim, lim)};
}

inline ah::AffWeight weight(Rng& r, const ah::RootSystem& rs, long lim = 4) {
    return {vec(r, rs.rank(), lim), r.range(-lim, lim), r.range(-lim, lim)};
}

inline ah::AffWeylElt weyl(Rng& r, const ah::RootSystem& rs, long lim = 3) {
    return {vec(r, rs.rank(), lim), static_cast<int>(r.range(0, rs.weyl_size() - 1))};
}

// random word in the simple affine reflections
inline ah::AffWeylElt weyl_word(Rng& r, const ah::RootSystem& rs, int len) {
    std::vector<int> w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(r.range(0, rs.rank())));
    return ah::from_word(rs, w);
}

// random series with exponents of one loop component, grades inside [gmin, H]
inline ah::LatticeSeries series(Rng& r, ah::RootSystemPtr rs, long gmin, long H, int terms, long m = -1) {
    ah::LatticeSeries s(rs, gmin, H);
    for (int i = 0; i < terms; ++i) {
        ah::AffCoweight x{vec(r, rs->rank(), 3), r.range(0, 3), m};
        long g = ah::grade(*rs, x);
        if (g < gmin || g > H) continue;
        s.add_term(x, coeff(r, 2, 4, 9));
    }
    return s;
}

}  // namespace gen

inline ah::MotCoeff Lp(int e, long c = 1) { return ah::MotCoeff::L_pow(e, c); }
