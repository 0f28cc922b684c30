#include "affhall/affine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace ah {
namespace {

using QMat = std::vector<std::vector<mpq_class>>;

QMat qinverse(QMat a) {
    size_t n = a.size();
    QMat inv(n, std::vector<mpq_class>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw Error(Error::Internal, "singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        mpq_class piv = a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

mpz_class floor_q(const mpq_class& x) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

// smallest integer r >= 0 with r^2 >= x
mpz_class ceil_sqrt_q(const mpq_class& x) {
    if (x <= 0) return 0;
    mpz_class c = floor_q(x) + 1;
    mpz_class r = sqrt(c);
    while (mpq_class(r * r) < x) ++r;
    return r;
}

}  // namespace

std::string AffCoweight::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ";" << c << ";" << m << ")";
    return os.str();
}

std::string AffWeight::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
    os << ";" << l << ";" << n << ")";
    return os.str();
}

long pair(const AffWeight& w, const AffCoweight& x) { return dot(w.mu, x.a) + w.l * x.c + w.n * x.m; }

std::string TorsorLabel::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < b.a.size(); ++i) os << (i ? "," : "") << b.a[i];
    os << ";" << b.c << ";" << b.m;
    return os.str();
}

static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else cur += ch;
    }
    out.push_back(cur);
    return out;
}

static long parse_long(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(Error::Malformed, "cannot parse " + what + " '" + s + "'");
    }
}

TorsorLabel TorsorLabel::parse(const RootSystem& rs, const std::string& s) {
    auto parts = split(s, ';');
    if (parts.size() != 3) throw Error(Error::Malformed, "torsor label must look like 'f1,...,fr;m;-d', got '" + s + "'");
    TorsorLabel t;
    auto fs = split(parts[0], ',');
    if (static_cast<int>(fs.size()) != rs.rank())
        throw Error(Error::Malformed, "finite part of '" + s + "' needs " + std::to_string(rs.rank()) + " entries");
    for (auto& f : fs) t.b.a.push_back(parse_long(f, "finite coordinate"));
    t.b.c = parse_long(parts[1], "central component");
    t.b.m = parse_long(parts[2], "loop component");
    if (t.b.m >= 0) throw Error(Error::Domain, "negative index required: loop component must be -d with d > 0");
    if (!is_antidominant(rs, t.b)) throw Error(Error::Domain, "torsor label '" + s + "' is not antidominant");
    return t;
}

AffWeight affine_root_weight(const RootSystem& rs, const AffRoot& r) {
    return {rs.roots()[static_cast<size_t>(r.beta)].omega, 0, r.n};
}

AffCoweight affine_coroot(const RootSystem& rs, const AffRoot& r) {
    const Root& b = rs.roots()[static_cast<size_t>(r.beta)];
    return {b.coroot, r.n * b.kac, 0};
}

bool is_positive(const RootSystem& rs, const AffRoot& r) {
    return r.n > 0 || (r.n == 0 && rs.roots()[static_cast<size_t>(r.beta)].positive);
}

AffRoot simple_affine_root(const RootSystem& rs, int i) {
    if (i == 0) return {rs.root_index(neg(rs.theta().omega)), 1};
    return {i - 1, 0};
}

AffWeight rho_hat(const RootSystem& rs) { return {rs.rho(), rs.h_dual(), 0}; }

AffCoweight two_rho_hat_dual(const RootSystem& rs) { return {rs.two_rho_dual(), 0, 2L * rs.h()}; }

long grade(const RootSystem& rs, const AffCoweight& x) { return rs.pair_rho(x.a) + rs.h_dual() * x.c; }

AffWeylElt weyl_identity(const RootSystem& rs) { return {Vec(static_cast<size_t>(rs.rank()), 0), rs.identity()}; }
AffWeylElt translation(const RootSystem& rs, const Vec& b) { return {b, rs.identity()}; }
AffWeylElt finite_elt(const RootSystem& rs, int u) { return {Vec(static_cast<size_t>(rs.rank()), 0), u}; }

AffWeylElt simple_affine_reflection(const RootSystem& rs, int i) {
    if (i < 0 || i > rs.rank()) throw Error(Error::Malformed, "simple reflection index out of range");
    if (i > 0) return finite_elt(rs, rs.simple_reflection(i - 1));
    // s_{alpha_0} = t_{theta^v} s_theta
    const int r = rs.rank();
    const Root& th = rs.theta();
    IMat m(static_cast<size_t>(r * r), 0);
    for (int a = 0; a < r; ++a)
        for (int j = 0; j < r; ++j)
            m[static_cast<size_t>(a * r + j)] = (a == j ? 1 : 0) - th.coroot[static_cast<size_t>(a)] * th.omega[static_cast<size_t>(j)];
    return {th.coroot, rs.weyl_index_of_L(m)};
}

AffWeylElt compose(const RootSystem& rs, const AffWeylElt& x, const AffWeylElt& y) {
    return {add(x.trans, rs.actL(x.fin, y.trans)), rs.mul(x.fin, y.fin)};
}

AffWeylElt inverse(const RootSystem& rs, const AffWeylElt& x) {
    int ui = rs.inv(x.fin);
    return {neg(rs.actL(ui, x.trans)), ui};
}

AffWeylElt from_word(const RootSystem& rs, const std::vector<int>& word) {
    AffWeylElt w = weyl_identity(rs);
    for (int i : word) w = compose(rs, w, simple_affine_reflection(rs, i));
    return w;
}

AffWeylElt parse_weyl(const RootSystem& rs, const std::string& s) {
    AffWeylElt w = weyl_identity(rs);
    for (auto& tok : split(s, '*')) {
        if (tok.empty() || tok == "e") continue;
        if (tok.rfind("t:", 0) == 0) {
            auto cs = split(tok.substr(2), ',');
            if (static_cast<int>(cs.size()) != rs.rank()) throw Error(Error::Malformed, "translation '" + tok + "' has wrong rank");
            Vec b;
            for (auto& c : cs) b.push_back(parse_long(c, "translation coordinate"));
            w = compose(rs, w, translation(rs, b));
            continue;
        }
        std::vector<int> word;
        size_t p = 0;
        while (p < tok.size()) {
            if (tok[p] != 's') throw Error(Error::Malformed, "cannot parse Weyl element '" + s + "'");
            size_t q = p + 1;
            while (q < tok.size() && std::isdigit(static_cast<unsigned char>(tok[q]))) ++q;
            if (q == p + 1) throw Error(Error::Malformed, "cannot parse Weyl element '" + s + "'");
            word.push_back(static_cast<int>(parse_long(tok.substr(p + 1, q - p - 1), "reflection index")));
            p = q;
        }
        w = compose(rs, w, from_word(rs, word));
    }
    return w;
}

std::string weyl_str(const RootSystem& rs, const AffWeylElt& w) {
    auto word = reduced_word(rs, w);
    if (word.empty()) return "e";
    std::string s;
    for (int i : word) s += "s" + std::to_string(i);
    return s;
}

AffCoweight act_coweight(const RootSystem& rs, const AffWeylElt& w, const AffCoweight& x) {
    Vec a = rs.actL(w.fin, x.a);
    const Vec& t = w.trans;
    long c = x.c + rs.psi(a, t) + rs.psi(t, t) / 2 * x.m;
    return {add(a, scale(x.m, t)), c, x.m};
}

AffWeight act_weight(const RootSystem& rs, const AffWeylElt& w, const AffWeight& w0) {
    Vec mu = rs.actLd(w.fin, w0.mu);
    const Vec& t = w.trans;
    long n = w0.n - dot(mu, t) + rs.psi(t, t) / 2 * w0.l;
    return {sub(mu, scale(w0.l, rs.psi_dual(t))), w0.l, n};
}

AffRoot act_root(const RootSystem& rs, const AffWeylElt& w, const AffRoot& r) {
    Vec ub = rs.actLd(w.fin, rs.roots()[static_cast<size_t>(r.beta)].omega);
    return {rs.root_index(ub), r.n - dot(ub, w.trans)};
}

std::vector<AffRoot> inversion_set(const RootSystem& rs, const AffWeylElt& w) {
    std::vector<AffRoot> out;
    const auto& roots = rs.roots();
    for (size_t i = 0; i < roots.size(); ++i) {
        Vec ub = rs.actLd(w.fin, roots[i].omega);
        long k = dot(ub, w.trans);
        long n0 = roots[i].positive ? 0 : 1;
        bool neg_image = !rs.is_positive_omega(ub);
        for (long n = n0; n <= k; ++n)
            if (n < k || neg_image) out.push_back({static_cast<int>(i), n});
    }
    std::sort(out.begin(), out.end());
    return out;
}

int length(const RootSystem& rs, const AffWeylElt& w) { return static_cast<int>(inversion_set(rs, w).size()); }

std::vector<int> reduced_word(const RootSystem& rs, const AffWeylElt& w0) {
    AffWeylElt w = w0;
    std::vector<int> rev;
    for (;;) {
        int found = -1;
        for (int i = 0; i <= rs.rank() && found < 0; ++i)
            if (!is_positive(rs, act_root(rs, w, simple_affine_root(rs, i)))) found = i;
        if (found < 0) break;
        rev.push_back(found);
        w = compose(rs, w, simple_affine_reflection(rs, found));
    }
    return {rev.rbegin(), rev.rend()};
}

std::vector<AffRoot> positive_roots_to_grade(const RootSystem& rs, long H) {
    std::vector<AffRoot> out;
    long maxht = 0;
    for (auto& r : rs.roots()) maxht = std::max(maxht, std::abs(rs.pair_rho(r.coroot)));
    for (long n = 0; n * rs.h_dual() - maxht <= H; ++n)
        for (size_t i = 0; i < rs.roots().size(); ++i) {
            AffRoot r{static_cast<int>(i), n};
            if (!is_positive(rs, r)) continue;
            if (grade(rs, affine_coroot(rs, r)) <= H) out.push_back(r);
        }
    return out;
}

namespace {

// Per finite part u, grade(t_t u(b)) = (kappa/2) t^T M t + l^T t + C with M = -Psi.
struct Quadric {
    mpq_class kappa;
    std::vector<mpq_class> lin;
    mpq_class C;
};

Quadric quadric_for(const RootSystem& rs, const AffCoweight& b, int u) {
    const int r = rs.rank();
    Vec uf = rs.actL(u, b.a);
    Quadric q;
    q.kappa = mpq_class(-rs.h_dual() * b.m);
    Vec pu = rs.psi_dual(uf);
    for (int j = 0; j < r; ++j) q.lin.push_back(mpq_class(b.m + rs.h_dual() * pu[static_cast<size_t>(j)]));
    q.C = mpq_class(rs.pair_rho(uf) + rs.h_dual() * b.c);
    return q;
}

QMat gram_inverse(const RootSystem& rs) {
    const int r = rs.rank();
    QMat M(static_cast<size_t>(r), std::vector<mpq_class>(static_cast<size_t>(r)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = -rs.psi_entry(i, j);
    return qinverse(M);
}

}  // namespace

std::vector<AffWeylElt> enumerate_weyl_by_grade(const RootSystem& rs, const AffCoweight& b, long H) {
    if (b.m >= 0) throw Error(Error::Domain, "graded enumeration needs a negative loop component");
    const int r = rs.rank();
    QMat Minv = gram_inverse(rs);
    std::vector<AffWeylElt> out;
    for (int u = 0; u < rs.weyl_size(); ++u) {
        Quadric q = quadric_for(rs, b, u);
        // center t0 = -M^{-1} l / kappa, minimum C - l^T M^{-1} l / (2 kappa)
        std::vector<mpq_class> t0(static_cast<size_t>(r), 0);
        mpq_class lml = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                t0[static_cast<size_t>(i)] -= Minv[static_cast<size_t>(i)][static_cast<size_t>(j)] * q.lin[static_cast<size_t>(j)] / q.kappa;
                lml += q.lin[static_cast<size_t>(i)] * Minv[static_cast<size_t>(i)][static_cast<size_t>(j)] * q.lin[static_cast<size_t>(j)];
            }
        mpq_class gmin = q.C - lml / (2 * q.kappa);
        if (gmin > H) continue;
        mpq_class R2 = 2 * (mpq_class(H) - gmin) / q.kappa;
        Vec lo(static_cast<size_t>(r)), hi(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i) {
            mpz_class rad = ceil_sqrt_q(R2 * Minv[static_cast<size_t>(i)][static_cast<size_t>(i)]);
            lo[static_cast<size_t>(i)] = floor_q(t0[static_cast<size_t>(i)] - rad).get_si();
            hi[static_cast<size_t>(i)] = floor_q(t0[static_cast<size_t>(i)] + rad).get_si() + 1;
        }
        Vec t = lo;
        std::function<void(int)> rec = [&](int i) {
            if (i == r) {
                AffWeylElt w{t, u};
                if (grade(rs, act_coweight(rs, w, b)) <= H) out.push_back(w);
                return;
            }
            for (long x = lo[static_cast<size_t>(i)]; x <= hi[static_cast<size_t>(i)]; ++x) {
                t[static_cast<size_t>(i)] = x;
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::sort(out.begin(), out.end(), [&](const AffWeylElt& x, const AffWeylElt& y) {
        long gx = grade(rs, act_coweight(rs, x, b)), gy = grade(rs, act_coweight(rs, y, b));
        return gx != gy ? gx < gy : x < y;
    });
    return out;
}

long min_orbit_grade(const RootSystem& rs, const AffCoweight& b) {
    if (b.m >= 0) throw Error(Error::Domain, "graded enumeration needs a negative loop component");
    QMat Minv = gram_inverse(rs);
    mpq_class best;
    bool first = true;
    for (int u = 0; u < rs.weyl_size(); ++u) {
        Quadric q = quadric_for(rs, b, u);
        mpq_class lml = 0;
        for (int i = 0; i < rs.rank(); ++i)
            for (int j = 0; j < rs.rank(); ++j)
                lml += q.lin[static_cast<size_t>(i)] * Minv[static_cast<size_t>(i)][static_cast<size_t>(j)] * q.lin[static_cast<size_t>(j)];
        mpq_class g = q.C - lml / (2 * q.kappa);
        if (first || g < best) best = g;
        first = false;
    }
    for (long H = floor_q(best).get_si();; ++H)
        if (!enumerate_weyl_by_grade(rs, b, H).empty()) return H;
}

std::vector<mpq_class> gram_solve(const RootSystem& rs, const Vec& rhs) {
    QMat Minv = gram_inverse(rs);
    std::vector<mpq_class> x(rhs.size(), 0);
    for (size_t i = 0; i < rhs.size(); ++i)
        for (size_t j = 0; j < rhs.size(); ++j) x[i] += Minv[i][j] * rhs[j];
    return x;
}

std::vector<Vec> lattice_ball(const RootSystem& rs, const std::vector<mpq_class>& center, const mpq_class& R2) {
    const int r = rs.rank();
    std::vector<Vec> out;
    if (R2 < 0) return out;
    QMat Minv = gram_inverse(rs);
    Vec lo(static_cast<size_t>(r)), hi(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        mpz_class rad = ceil_sqrt_q(R2 * Minv[static_cast<size_t>(i)][static_cast<size_t>(i)]);
        lo[static_cast<size_t>(i)] = floor_q(center[static_cast<size_t>(i)] - rad).get_si();
        hi[static_cast<size_t>(i)] = floor_q(center[static_cast<size_t>(i)] + rad).get_si() + 1;
    }
    Vec a = lo;
    std::vector<mpq_class> d(static_cast<size_t>(r));
    std::function<void(int)> rec = [&](int i) {
        if (i == r) {
            for (int k = 0; k < r; ++k) d[static_cast<size_t>(k)] = a[static_cast<size_t>(k)] - center[static_cast<size_t>(k)];
            mpq_class n2 = 0;
            for (int k = 0; k < r; ++k)
                for (int j = 0; j < r; ++j) n2 -= d[static_cast<size_t>(k)] * rs.psi_entry(k, j) * d[static_cast<size_t>(j)];
            if (n2 <= R2) out.push_back(a);
            return;
        }
        for (long x = lo[static_cast<size_t>(i)]; x <= hi[static_cast<size_t>(i)]; ++x) {
            a[static_cast<size_t>(i)] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

bool is_antidominant(const RootSystem& rs, const AffCoweight& b) {
    for (int i = 0; i <= rs.rank(); ++i)
        if (pair(affine_root_weight(rs, simple_affine_root(rs, i)), b) > 0) return false;
    return true;
}

std::vector<TorsorLabel> torsor_labels(const RootSystem& rs, long d) {
    if (d <= 0) throw Error(Error::Domain, "negative index required: d must be positive");
    const int r = rs.rank();
    QMat At(static_cast<size_t>(r), std::vector<mpq_class>(static_cast<size_t>(r)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) At[static_cast<size_t>(i)][static_cast<size_t>(j)] = rs.cartan(j, i);
    QMat Ainv = qinverse(At);
    const Vec& marks = rs.theta().alpha;
    std::vector<TorsorLabel> out;
    Vec n(static_cast<size_t>(r), 0);
    // <alpha_i, f> = -n_i, n_i >= 0, sum marks_i n_i <= d
    std::function<void(int, long)> rec = [&](int i, long budget) {
        if (i == r) {
            Vec f;
            for (int a = 0; a < r; ++a) {
                mpq_class x = 0;
                for (int j = 0; j < r; ++j) x -= Ainv[static_cast<size_t>(a)][static_cast<size_t>(j)] * n[static_cast<size_t>(j)];
                if (x.get_den() != 1) return;
                f.push_back(x.get_num().get_si());
            }
            out.push_back({{f, 0, -d}});
            return;
        }
        for (long k = 0; k * marks[static_cast<size_t>(i)] <= budget; ++k) {
            n[static_cast<size_t>(i)] = k;
            rec(i + 1, budget - k * marks[static_cast<size_t>(i)]);
        }
        n[static_cast<size_t>(i)] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(), [](const TorsorLabel& x, const TorsorLabel& y) { return y.b.a < x.b.a; });
    return out;
}

}  // namespace ah
