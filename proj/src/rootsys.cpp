#include "affhall/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"

namespace ah {

long dot(const Vec& a, const Vec& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}
Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}
Vec scale(long k, const Vec& a) {
    Vec r(a);
    for (auto& x : r) x *= k;
    return r;
}
Vec neg(const Vec& a) { return scale(-1, a); }
bool is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

namespace {

IMat cartan_matrix(char type, int n) {
    auto bad = [&] { throw Error(Error::Domain, std::string("invalid root system type/rank ") + type + std::to_string(n)); };
    if (n < 1) bad();
    IMat A(static_cast<size_t>(n * n), 0);
    auto at = [&](int i, int j) -> long& { return A[static_cast<size_t>(i * n + j)]; };
    for (int i = 0; i < n; ++i) at(i, i) = 2;
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) at(i, i + 1) = at(i + 1, i) = -1;
    };
    switch (type) {
        case 'A': chain(n); break;
        case 'B':
            if (n < 2) bad();
            chain(n);
            at(n - 1, n - 2) = -2;
            break;
        case 'C':
            if (n < 2) bad();
            chain(n);
            at(n - 2, n - 1) = -2;
            break;
        case 'D':
            if (n < 4) bad();
            chain(n - 1);
            at(n - 2, n - 1) = at(n - 1, n - 2) = 0;
            at(n - 3, n - 1) = at(n - 1, n - 3) = -1;
            break;
        case 'E': {
            if (n < 6 || n > 8) bad();
            // Bourbaki: 1-3-4-5-6-7-8, with 2 attached to 4
            auto link = [&](int i, int j) { at(i - 1, j - 1) = at(j - 1, i - 1) = -1; };
            link(1, 3);
            link(3, 4);
            link(2, 4);
            for (int i = 4; i < n; ++i) link(i, i + 1);
            break;
        }
        case 'F':
            if (n != 4) bad();
            chain(4);
            at(2, 1) = -2;
            break;
        case 'G':
            if (n != 2) bad();
            at(0, 1) = -3;
            at(1, 0) = -1;
            break;
        default: bad();
    }
    return A;
}

IMat matmul(const IMat& X, const IMat& Y, int r) {
    IMat Z(static_cast<size_t>(r * r), 0);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            long x = X[static_cast<size_t>(i * r + k)];
            if (!x) continue;
            for (int j = 0; j < r; ++j) Z[static_cast<size_t>(i * r + j)] += x * Y[static_cast<size_t>(k * r + j)];
        }
    return Z;
}

Vec matvec(const IMat& M, const Vec& v) {
    int r = static_cast<int>(v.size());
    Vec o(v.size(), 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) o[static_cast<size_t>(i)] += M[static_cast<size_t>(i * r + j)] * v[static_cast<size_t>(j)];
    return o;
}

}  // namespace

RootSystemPtr RootSystem::build(char type, int rank, int rank_cap) {
    if (rank > rank_cap) throw Error(Error::Bounds, "rank " + std::to_string(rank) + " exceeds the cap " + std::to_string(rank_cap));
    auto rs = std::make_shared<RootSystem>();
    RootSystem& R = *rs;
    R.type_ = type;
    R.r_ = rank;
    R.A_ = cartan_matrix(type, rank);
    const int r = rank;

    // symmetrize: (a_i,a_j) = A_ij (a_i,a_i)/2, normalized so long roots have length^2 2
    R.len2_.assign(static_cast<size_t>(r), 0);
    R.len2_[0] = 1;
    std::vector<bool> seen(static_cast<size_t>(r), false);
    seen[0] = true;
    std::deque<int> q{0};
    while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        for (int j = 0; j < r; ++j)
            if (!seen[static_cast<size_t>(j)] && R.cartan(i, j) != 0) {
                R.len2_[static_cast<size_t>(j)] = R.len2_[static_cast<size_t>(i)] * R.cartan(i, j) / R.cartan(j, i);
                seen[static_cast<size_t>(j)] = true;
                q.push_back(j);
            }
    }
    mpq_class mx = *std::max_element(R.len2_.begin(), R.len2_.end());
    for (auto& l : R.len2_) l = l * 2 / mx;
    R.simply_laced_ = std::all_of(R.len2_.begin(), R.len2_.end(), [](const mpq_class& l) { return l == 2; });

    R.psi_.assign(static_cast<size_t>(r * r), 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            mpq_class v = -mpq_class(R.cartan(i, j)) * 2 / R.len2_[static_cast<size_t>(j)];
            if (v.get_den() != 1) throw Error(Error::Internal, "non-integral form");
            R.psi_[static_cast<size_t>(i * r + j)] = v.get_num().get_si();
        }

    auto omega_of = [&](const Vec& k) {
        Vec w(static_cast<size_t>(r), 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) w[static_cast<size_t>(i)] += R.cartan(i, j) * k[static_cast<size_t>(j)];
        return w;
    };
    // positive roots by closure under simple reflections
    std::set<Vec> pos;
    std::vector<Vec> frontier;
    for (int i = 0; i < r; ++i) {
        Vec e(static_cast<size_t>(r), 0);
        e[static_cast<size_t>(i)] = 1;
        pos.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (auto& b : frontier) {
            Vec w = omega_of(b);
            for (int i = 0; i < r; ++i) {
                Vec c = b;
                c[static_cast<size_t>(i)] -= w[static_cast<size_t>(i)];
                bool ok = !is_zero(c) && std::all_of(c.begin(), c.end(), [](long x) { return x >= 0; });
                if (ok && pos.insert(c).second) next.push_back(c);
            }
        }
        frontier = std::move(next);
    }
    std::vector<Vec> posv(pos.begin(), pos.end());
    std::stable_sort(posv.begin(), posv.end(), [](const Vec& a, const Vec& b) {
        long ha = 0, hb = 0;
        for (long x : a) ha += x;
        for (long x : b) hb += x;
        return ha != hb ? ha < hb : a > b;  // simple roots in index order
    });
    auto make_root = [&](const Vec& k, bool positive) {
        Root rt;
        rt.alpha = k;
        rt.omega = omega_of(k);
        rt.len2 = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                rt.len2 += mpq_class(k[static_cast<size_t>(i)] * k[static_cast<size_t>(j)] * R.cartan(i, j)) *
                           R.len2_[static_cast<size_t>(i)] / 2;
        rt.coroot.assign(static_cast<size_t>(r), 0);
        for (int i = 0; i < r; ++i) {
            mpq_class c = mpq_class(k[static_cast<size_t>(i)]) * R.len2_[static_cast<size_t>(i)] / rt.len2;
            if (c.get_den() != 1) throw Error(Error::Internal, "non-integral coroot");
            rt.coroot[static_cast<size_t>(i)] = c.get_num().get_si();
        }
        mpq_class kc = mpq_class(2) / rt.len2;
        if (kc.get_den() != 1) throw Error(Error::Internal, "non-integral affine coroot");
        rt.kac = kc.get_num().get_si();
        rt.height = 0;
        for (long x : k) rt.height += static_cast<int>(x);
        rt.positive = positive;
        return rt;
    };
    for (auto& k : posv) R.roots_.push_back(make_root(k, true));
    R.npos_ = static_cast<int>(posv.size());
    for (auto& k : posv) R.roots_.push_back(make_root(neg(k), false));
    for (size_t i = 0; i < R.roots_.size(); ++i) R.root_by_omega_[R.roots_[i].omega] = static_cast<int>(i);
    R.theta_ = R.npos_ - 1;
    R.h_ = R.theta().height + 1;
    R.hv_ = 1 + static_cast<int>(R.pair_rho(R.theta().coroot));

    // Weyl group by breadth-first closure; words are reduced
    std::vector<IMat> sL, sLd;
    for (int i = 0; i < r; ++i) {
        IMat mL(static_cast<size_t>(r * r), 0), mLd(static_cast<size_t>(r * r), 0);
        for (int a = 0; a < r; ++a) {
            mL[static_cast<size_t>(a * r + a)] = 1;
            mLd[static_cast<size_t>(a * r + a)] = 1;
        }
        // s_i x = x - <alpha_i, x> alpha_i^v, <alpha_i, e_j> = A_ji
        for (int j = 0; j < r; ++j) mL[static_cast<size_t>(i * r + j)] -= R.cartan(j, i);
        // s_i mu = mu - mu_i alpha_i, alpha_i has omega-coordinates A_ki
        for (int k = 0; k < r; ++k) mLd[static_cast<size_t>(k * r + i)] -= R.cartan(k, i);
        sL.push_back(mL);
        sLd.push_back(mLd);
    }
    FiniteWeylElt e;
    e.onL.assign(static_cast<size_t>(r * r), 0);
    for (int a = 0; a < r; ++a) e.onL[static_cast<size_t>(a * r + a)] = 1;
    e.onLd = e.onL;
    R.W_.push_back(e);
    R.w_by_L_[e.onL] = 0;
    for (size_t head = 0; head < R.W_.size(); ++head) {
        for (int i = 0; i < r; ++i) {
            IMat m = matmul(sL[static_cast<size_t>(i)], R.W_[head].onL, r);
            if (R.w_by_L_.count(m)) continue;
            FiniteWeylElt x;
            x.onL = m;
            x.onLd = matmul(sLd[static_cast<size_t>(i)], R.W_[head].onLd, r);
            x.word.push_back(i);
            x.word.insert(x.word.end(), R.W_[head].word.begin(), R.W_[head].word.end());
            x.length = R.W_[head].length + 1;
            R.w_by_L_[m] = static_cast<int>(R.W_.size());
            R.W_.push_back(std::move(x));
        }
    }
    for (int i = 0; i < r; ++i) R.sref_.push_back(R.w_by_L_.at(sL[static_cast<size_t>(i)]));
    size_t n = R.W_.size();
    if (n <= 1200) {
        R.mult_.resize(n * n);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                R.mult_[a * n + b] = R.w_by_L_.at(matmul(R.W_[a].onL, R.W_[b].onL, r));
    }
    R.inv_.resize(n);
    for (size_t a = 0; a < n; ++a) {
        // inverse of the L-action is the transpose of the L^v-action
        IMat t(static_cast<size_t>(r * r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) t[static_cast<size_t>(i * r + j)] = R.W_[a].onLd[static_cast<size_t>(j * r + i)];
        R.inv_[a] = R.w_by_L_.at(t);
    }
    return rs;
}

int RootSystem::mul(int u, int v) const {
    if (!mult_.empty()) return mult_[static_cast<size_t>(u) * W_.size() + static_cast<size_t>(v)];
    return w_by_L_.at(matmul(W_[static_cast<size_t>(u)].onL, W_[static_cast<size_t>(v)].onL, r_));
}

int RootSystem::weyl_index_of_L(const IMat& m) const {
    auto it = w_by_L_.find(m);
    return it == w_by_L_.end() ? -1 : it->second;
}

long RootSystem::psi(const Vec& a, const Vec& b) const {
    long s = 0;
    for (int i = 0; i < r_; ++i) {
        if (!a[static_cast<size_t>(i)]) continue;
        for (int j = 0; j < r_; ++j) s += a[static_cast<size_t>(i)] * psi_entry(i, j) * b[static_cast<size_t>(j)];
    }
    return s;
}

Vec RootSystem::psi_dual(const Vec& b) const {
    Vec o(static_cast<size_t>(r_), 0);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) o[static_cast<size_t>(i)] += psi_entry(i, j) * b[static_cast<size_t>(j)];
    return o;
}

long RootSystem::pair_rho(const Vec& a) const {
    long s = 0;
    for (long x : a) s += x;
    return s;
}

Vec RootSystem::two_rho_dual() const {
    Vec s(static_cast<size_t>(r_), 0);
    for (int i = 0; i < npos_; ++i) s = add(s, roots_[static_cast<size_t>(i)].coroot);
    return s;
}

Vec RootSystem::simple_coroot(int i) const {
    Vec e(static_cast<size_t>(r_), 0);
    e[static_cast<size_t>(i)] = 1;
    return e;
}

Vec RootSystem::simple_root_omega(int i) const {
    Vec o(static_cast<size_t>(r_));
    for (int k = 0; k < r_; ++k) o[static_cast<size_t>(k)] = cartan(k, i);
    return o;
}

int RootSystem::root_index(const Vec& omega) const {
    auto it = root_by_omega_.find(omega);
    return it == root_by_omega_.end() ? -1 : it->second;
}

bool RootSystem::is_positive_omega(const Vec& omega) const {
    int i = root_index(omega);
    if (i < 0) throw Error(Error::Internal, "not a root");
    return roots_[static_cast<size_t>(i)].positive;
}

Vec RootSystem::actL(int u, const Vec& x) const { return matvec(W_[static_cast<size_t>(u)].onL, x); }
Vec RootSystem::actLd(int u, const Vec& mu) const { return matvec(W_[static_cast<size_t>(u)].onLd, mu); }

std::vector<int> RootSystem::finite_inversions(int u) const {
    std::vector<int> out;
    for (int i = 0; i < npos_; ++i)
        if (!is_positive_omega(actLd(u, roots_[static_cast<size_t>(i)].omega))) out.push_back(i);
    return out;
}

std::string RootSystem::to_json() const {
    nlohmann::json j;
    j["type"] = std::string(1, type_);
    j["rank"] = r_;
    j["cartan"] = A_;
    j["psi"] = psi_;
    j["h"] = h_;
    j["h_dual"] = hv_;
    nlohmann::json rl = nlohmann::json::array();
    for (auto& rt : roots_) {
        if (!rt.positive) continue;
        rl.push_back({{"alpha", rt.alpha}, {"omega", rt.omega}, {"coroot", rt.coroot}, {"len2", rt.len2.get_str()}});
    }
    j["positive_roots"] = rl;
    j["weyl_order"] = W_.size();
    return j.dump();
}

long kappa_index(const RootSystem& rs, const std::vector<Vec>& weights) {
    if (weights.empty()) throw Error(Error::Malformed, "empty weight multiset");
    const int r = rs.rank();
    for (auto& w : weights)
        if (static_cast<int>(w.size()) != r) throw Error(Error::Malformed, "weight of wrong rank");
    std::vector<Vec> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < r; ++i) {
        std::vector<Vec> img;
        for (auto& w : weights) img.push_back(rs.actLd(rs.simple_reflection(i), w));
        std::sort(img.begin(), img.end());
        if (img != sorted) throw Error(Error::Domain, "not proportional: weight multiset is not W-stable");
    }
    // phi(a) = sum_{i<j} a_i a_j on lambda_V(x) = (<mu_k, x>)_k
    auto phi = [&](const Vec& x) {
        mpz_class s = 0, s2 = 0;
        for (auto& w : weights) {
            long a = dot(w, x);
            s += a;
            s2 += a * a;
        }
        return mpz_class((s * s - s2) / 2);
    };
    std::optional<mpq_class> kappa;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            Vec x = rs.simple_coroot(i);
            mpz_class lhs;
            long rhs2;  // twice the Psi side per unit kappa
            if (i == j) {
                lhs = phi(x) * 2;
                rhs2 = rs.psi_entry(i, i);
            } else {
                Vec y = rs.simple_coroot(j);
                lhs = (phi(add(x, y)) - phi(x) - phi(y)) * 2;
                rhs2 = 2 * rs.psi_entry(i, j);
            }
            if (rhs2 == 0) {
                if (lhs != 0) throw Error(Error::Domain, "not proportional");
                continue;
            }
            mpq_class k(lhs, rhs2);
            k.canonicalize();
            if (kappa && *kappa != k) throw Error(Error::Domain, "not proportional");
            kappa = k;
        }
    if (!kappa || kappa->get_den() != 1) throw Error(Error::Domain, "not proportional");
    return kappa->get_num().get_si();
}

}  // namespace ah
