#include "affhall/oracle.hpp"

#include <algorithm>
#include <thread>

#include "affhall/coeff.hpp"
#include "affhall/series.hpp"

namespace ah {

namespace {

using Poly = std::vector<int>;  // dehomogenized, index = power of x

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int q) {
    int r = 1;
    for (int e = q - 2, b = a; e > 0; e >>= 1, b = b * b % q)
        if (e & 1) r = r * b % q;
    return r;
}

Poly pmod(Poly a, const Poly& b, int q) {
    int inv = inv_mod(b.back(), q);
    trim(a);
    while (a.size() >= b.size()) {
        int c = a.back() * inv % q;
        size_t s = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[s + i] = ((a[s + i] - c * b[i]) % q + q) % q;
        trim(a);
    }
    return a;
}

Poly pgcd(Poly a, Poly b, int q) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = pmod(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::uint64_t ipow(long q, long e) {
    std::uint64_t r = 1;
    for (long i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(q);
    return r;
}

void check_budget(std::uint64_t n, const OracleLimits& lim) {
    if (n > lim.max_enumeration)
        throw Error(Error::Bounds, "oracle cell too large: " + std::to_string(n) + " tuples exceed the cap of " +
                                       std::to_string(lim.max_enumeration));
}

void check_degree(long d, const OracleLimits& lim) {
    if (d < 0) throw Error(Error::Bounds, "negative degree");
    if (d > lim.max_degree) throw Error(Error::Bounds, "degree " + std::to_string(d) + " exceeds the cap of " + std::to_string(lim.max_degree));
}

// digits of idx in base q, len digits
void decode(std::uint64_t idx, long q, std::vector<int>& out) {
    for (auto& v : out) {
        v = static_cast<int>(idx % static_cast<std::uint64_t>(q));
        idx /= static_cast<std::uint64_t>(q);
    }
}

// first nonzero entry equals 1
bool normalized(const std::vector<int>& v) {
    for (int x : v)
        if (x) return x == 1;
    return false;
}

// sum of f(i) for i < n, split over workers; integer sums are order independent
template <class F>
std::uint64_t par_count(std::uint64_t n, F f) {
    int W = std::max(1, std::min<int>(worker_count(), static_cast<int>(std::min<std::uint64_t>(n, 64))));
    std::vector<std::uint64_t> part(static_cast<size_t>(W), 0);
    std::vector<std::thread> th;
    for (int t = 0; t < W; ++t)
        th.emplace_back([&, t] {
            std::uint64_t s = 0;
            for (std::uint64_t i = static_cast<std::uint64_t>(t); i < n; i += static_cast<std::uint64_t>(W)) s += f(i);
            part[static_cast<size_t>(t)] = s;
        });
    for (auto& x : th) x.join();
    std::uint64_t s = 0;
    for (auto v : part) s += v;
    return s;
}

std::vector<std::vector<Form>> normalized_tuples(long q, long d, int k) {
    std::uint64_t n = ipow(q, k * (d + 1));
    std::vector<std::vector<Form>> out;
    std::vector<int> digits(static_cast<size_t>(k * (d + 1)));
    for (std::uint64_t i = 0; i < n; ++i) {
        decode(i, q, digits);
        if (!normalized(digits)) continue;
        std::vector<Form> t;
        for (int j = 0; j < k; ++j) t.emplace_back(digits.begin() + j * (d + 1), digits.begin() + (j + 1) * (d + 1));
        if (forms_coprime(t, q)) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

void check_field(long q) {
    if (q != 2 && q != 3 && q != 5) throw Error(Error::Bounds, "oracle field must be F_2, F_3 or F_5, got q = " + std::to_string(q));
}

bool forms_coprime(const std::vector<Form>& fs, long q) {
    // the point at infinity [1:0] is a zero of f exactly when its x^d coefficient vanishes
    bool all_inf = true;
    for (auto& f : fs)
        if (f.back() % q) all_inf = false;
    if (all_inf) return false;
    Poly g;
    for (auto& f : fs) {
        g = pgcd(g, Poly(f.begin(), f.end()), static_cast<int>(q));
        if (g.size() == 1) return true;
    }
    return g.size() == 1;
}

std::uint64_t count_subsheaves(long q, long a1, const OracleLimits& lim) {
    check_field(q);
    if (a1 > 0) throw Error(Error::Bounds, "a1 must be <= 0");
    long d = -a1;
    check_degree(d, lim);
    std::uint64_t n = ipow(q, 2 * (d + 1));
    check_budget(n, lim);
    std::uint64_t nz = par_count(n, [&](std::uint64_t i) -> std::uint64_t { return i != 0; });
    return nz / static_cast<std::uint64_t>(q - 1);
}

std::uint64_t count_subbundles(long q, long a1, const OracleLimits& lim) {
    check_field(q);
    if (a1 > 0) throw Error(Error::Bounds, "a1 must be <= 0");
    long d = -a1;
    check_degree(d, lim);
    std::uint64_t n = ipow(q, 2 * (d + 1));
    check_budget(n, lim);
    std::uint64_t c = par_count(n, [&](std::uint64_t i) -> std::uint64_t {
        std::vector<int> digits(static_cast<size_t>(2 * (d + 1)));
        decode(i, q, digits);
        Form f(digits.begin(), digits.begin() + d + 1), g(digits.begin() + d + 1, digits.end());
        return forms_coprime({f, g}, q);
    });
    return c / static_cast<std::uint64_t>(q - 1);
}

std::uint64_t count_polar_sections(long q, long m, long n, const OracleLimits& lim) {
    check_field(q);
    if (m < 0) throw Error(Error::Bounds, "m must be >= 0");
    if (n < 0 || n > 3) throw Error(Error::Bounds, "n must lie in 0..3");
    check_degree(m + n, lim);
    std::uint64_t nd = ipow(q, n + 1), ns = ipow(q, m + n + 1);
    check_budget(nd * ns, lim);
    // D = divisor of a normalized form d_D; a section F of O(m+n) = O(m)(D) has polar divisor D
    // exactly when F and d_D have no common zero
    return par_count(nd, [&](std::uint64_t i) -> std::uint64_t {
        Form dd(static_cast<size_t>(n + 1));
        decode(i, q, dd);
        if (!normalized(dd)) return 0;
        std::uint64_t c = 0;
        Form f(static_cast<size_t>(m + n + 1));
        for (std::uint64_t j = 0; j < ns; ++j) {
            decode(j, q, f);
            if (forms_coprime({dd, f}, q)) ++c;
        }
        return c;
    });
}

std::uint64_t count_symmetric_product(long q, long n, const OracleLimits& lim) {
    check_field(q);
    if (n < 0 || n > 6) throw Error(Error::Bounds, "n must lie in 0..6");
    std::uint64_t N = ipow(q, n + 1);
    check_budget(N, lim);
    return par_count(N, [&](std::uint64_t i) -> std::uint64_t {
        Form f(static_cast<size_t>(n + 1));
        decode(i, q, f);
        return normalized(f);
    });
}

std::uint64_t count_flags_rank3(long q, long k1, long k2, const OracleLimits& lim) {
    check_field(q);
    if (k1 < 0 || k2 < 0) throw Error(Error::Bounds, "flag degrees must be >= 0");
    check_degree(std::max(k1, k2), lim);
    std::uint64_t n1 = ipow(q, 3 * (k1 + 1)), n2 = ipow(q, 3 * (k2 + 1));
    check_budget(n1 + n2, lim);
    // L1 = O(-k1) given by a coprime triple f; O^3 -> O(k2) by a coprime triple g; L1 in ker iff sum f_i g_i = 0
    auto F = normalized_tuples(q, k1, 3), G = normalized_tuples(q, k2, 3);
    check_budget(static_cast<std::uint64_t>(F.size()) * G.size(), lim);
    return par_count(F.size(), [&](std::uint64_t i) -> std::uint64_t {
        const auto& f = F[i];
        std::uint64_t c = 0;
        std::vector<int> s(static_cast<size_t>(k1 + k2 + 1));
        for (const auto& g : G) {
            std::fill(s.begin(), s.end(), 0);
            for (int r = 0; r < 3; ++r)
                for (size_t a = 0; a < f[r].size(); ++a)
                    if (f[r][a])
                        for (size_t b = 0; b < g[r].size(); ++b) s[a + b] += f[r][a] * g[r][b];
            bool zero = true;
            for (int v : s)
                if (v % q) zero = false;
            c += zero;
        }
        return c;
    });
}

}  // namespace ah
