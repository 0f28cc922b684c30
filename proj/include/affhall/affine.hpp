#pragma once

#include <string>
#include <vector>

#include "affhall/rootsys.hpp"

namespace ah {

// a + c K + m d
struct AffCoweight {
    Vec a;
    long c = 0;
    long m = 0;
    friend bool operator==(const AffCoweight& x, const AffCoweight& y) { return x.c == y.c && x.m == y.m && x.a == y.a; }
    friend bool operator!=(const AffCoweight& x, const AffCoweight& y) { return !(x == y); }
    friend bool operator<(const AffCoweight& x, const AffCoweight& y) {
        if (x.c != y.c) return x.c < y.c;
        if (x.a != y.a) return x.a < y.a;
        return x.m < y.m;
    }
    AffCoweight operator+(const AffCoweight& o) const { return {add(a, o.a), c + o.c, m + o.m}; }
    AffCoweight operator-(const AffCoweight& o) const { return {sub(a, o.a), c - o.c, m - o.m}; }
    AffCoweight operator-() const { return {neg(a), -c, -m}; }
    AffCoweight times(long k) const { return {scale(k, a), k * c, k * m}; }
    std::string str() const;
};

// mu + l Lambda_0 + n delta, mu in fundamental-weight coordinates
struct AffWeight {
    Vec mu;
    long l = 0;
    long n = 0;
    friend bool operator==(const AffWeight& x, const AffWeight& y) { return x.l == y.l && x.n == y.n && x.mu == y.mu; }
    AffWeight operator+(const AffWeight& o) const { return {add(mu, o.mu), l + o.l, n + o.n}; }
    AffWeight operator-(const AffWeight& o) const { return {sub(mu, o.mu), l - o.l, n - o.n}; }
    AffWeight operator-() const { return {neg(mu), -l, -n}; }
    std::string str() const;
};

long pair(const AffWeight& w, const AffCoweight& x);

// real affine root beta + n delta, beta given by its index in RootSystem::roots()
struct AffRoot {
    int beta = 0;
    long n = 0;
    friend bool operator==(const AffRoot& x, const AffRoot& y) { return x.beta == y.beta && x.n == y.n; }
    friend bool operator<(const AffRoot& x, const AffRoot& y) { return x.n != y.n ? x.n < y.n : x.beta < y.beta; }
};

// x -> t_trans(fin(x))
struct AffWeylElt {
    Vec trans;
    int fin = 0;
    friend bool operator==(const AffWeylElt& x, const AffWeylElt& y) { return x.fin == y.fin && x.trans == y.trans; }
    friend bool operator<(const AffWeylElt& x, const AffWeylElt& y) {
        return x.fin != y.fin ? x.fin < y.fin : x.trans < y.trans;
    }
};

struct TorsorLabel {
    AffCoweight b;
    long d() const { return -b.m; }
    std::string str() const;  // "f1,...,fr;m;-d"
    static TorsorLabel parse(const RootSystem& rs, const std::string& s);
};

AffWeight affine_root_weight(const RootSystem& rs, const AffRoot& r);
AffCoweight affine_coroot(const RootSystem& rs, const AffRoot& r);
bool is_positive(const RootSystem& rs, const AffRoot& r);
AffRoot simple_affine_root(const RootSystem& rs, int i);  // i = 0 is alpha_0
AffWeight rho_hat(const RootSystem& rs);
AffCoweight two_rho_hat_dual(const RootSystem& rs);  // 2 rho^v + 2h d
long grade(const RootSystem& rs, const AffCoweight& x);

AffWeylElt weyl_identity(const RootSystem& rs);
AffWeylElt translation(const RootSystem& rs, const Vec& b);
AffWeylElt finite_elt(const RootSystem& rs, int u);
AffWeylElt simple_affine_reflection(const RootSystem& rs, int i);  // i = 0 is s_{alpha_0}
AffWeylElt compose(const RootSystem& rs, const AffWeylElt& x, const AffWeylElt& y);
AffWeylElt inverse(const RootSystem& rs, const AffWeylElt& x);
AffWeylElt from_word(const RootSystem& rs, const std::vector<int>& word);
// "e", "s0", "s1", "s0s1", "t:1,0", "t:1,0*s1"
AffWeylElt parse_weyl(const RootSystem& rs, const std::string& s);
std::string weyl_str(const RootSystem& rs, const AffWeylElt& w);

AffCoweight act_coweight(const RootSystem& rs, const AffWeylElt& w, const AffCoweight& x);
AffWeight act_weight(const RootSystem& rs, const AffWeylElt& w, const AffWeight& mu);
AffRoot act_root(const RootSystem& rs, const AffWeylElt& w, const AffRoot& r);

std::vector<AffRoot> inversion_set(const RootSystem& rs, const AffWeylElt& w);
int length(const RootSystem& rs, const AffWeylElt& w);
// reduced word by greedy right descent through simple affine reflections
std::vector<int> reduced_word(const RootSystem& rs, const AffWeylElt& w);

// all positive real affine roots whose coroot has grade <= H
std::vector<AffRoot> positive_roots_to_grade(const RootSystem& rs, long H);

// All w with grade(w(b)) <= H; b must have negative loop component.
std::vector<AffWeylElt> enumerate_weyl_by_grade(const RootSystem& rs, const AffCoweight& b, long H);
// min over W-hat of grade(w(b)) (exact)
long min_orbit_grade(const RootSystem& rs, const AffCoweight& b);

// x with -Psi(x, .) = rhs (rhs in fundamental-weight coordinates)
std::vector<mpq_class> gram_solve(const RootSystem& rs, const Vec& rhs);
// all a in L with -Psi(a - c, a - c) <= R2, c given exactly
std::vector<Vec> lattice_ball(const RootSystem& rs, const std::vector<mpq_class>& center, const mpq_class& R2);

std::vector<TorsorLabel> torsor_labels(const RootSystem& rs, long d);
bool is_antidominant(const RootSystem& rs, const AffCoweight& b);

}  // namespace ah
