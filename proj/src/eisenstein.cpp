#include "affhall/eisenstein.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace ah {
namespace {

AffCoweight zero_cw(const RootSystem& rs) { return {Vec(static_cast<size_t>(rs.rank()), 0), 0, 0}; }

// Sum fn(i) for i < n over the worker pool. Partials are merged in a fixed order.
template <class F>
LatticeSeries par_sum(const RootSystemPtr& rs, long gmin, long H, size_t n, F fn) {
    int nw = std::max(1, std::min<int>(worker_count(), static_cast<int>(n)));
    std::vector<LatticeSeries> part(static_cast<size_t>(nw), LatticeSeries(rs, gmin, H));
    std::vector<std::exception_ptr> err(static_cast<size_t>(nw));
    auto work = [&](int k) {
        try {
            for (size_t i = static_cast<size_t>(k); i < n; i += static_cast<size_t>(nw)) part[static_cast<size_t>(k)] += fn(i);
        } catch (...) {
            err[static_cast<size_t>(k)] = std::current_exception();
        }
    };
    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> th;
        for (int k = 0; k < nw; ++k) th.emplace_back(work, k);
        for (auto& t : th) t.join();
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    LatticeSeries acc(rs, gmin, H);
    for (auto& p : part) acc += p;
    return acc;
}

// 1 + sum_{k>=1} a c^k t^{kx}, truncated at H
LatticeSeries unit_geometric(const RootSystemPtr& rs, const MotCoeff& a, const MotCoeff& c, const AffCoweight& x, long H) {
    long g = grade(*rs, x);
    if (g <= 0) throw Error(Error::Domain, "non-expandable direction: grade of " + x.str() + " is not positive");
    LatticeSeries r = LatticeSeries::one(rs, std::max(H, 0L));
    MotCoeff ck = c;
    for (long k = 1; k * g <= H; ++k) {
        r.add_term(x.times(k), a * ck);
        ck *= c;
    }
    return r;
}

long window_bottom(const RootSystem& rs, const AffCoweight& b, const std::vector<AffWeylElt>& ws) {
    return ws.empty() ? min_orbit_grade(rs, b) : grade(rs, act_coweight(rs, ws.front(), b));
}

}  // namespace

MotCoeff QSeries::at(long n) const {
    auto it = c.find(n);
    return it == c.end() ? MotCoeff() : it->second;
}

void QSeries::add(long n, const MotCoeff& v) {
    if (n > order || v.is_zero()) return;
    auto& x = c[n];
    x += v;
    if (x.is_zero()) c.erase(n);
}

QSeries qmul(const QSeries& a, const QSeries& b, long order) {
    long lo_a = a.c.empty() ? 0 : a.c.begin()->first, lo_b = b.c.empty() ? 0 : b.c.begin()->first;
    QSeries r{std::min({order, a.order + lo_b, b.order + lo_a}), {}};
    for (auto& [i, x] : a.c)
        for (auto& [j, y] : b.c) {
            if (i + j > r.order) break;
            r.add(i + j, x * y);
        }
    return r;
}

QSeries qeval_L(const QSeries& f, long x) {
    QSeries r{f.order, {}};
    for (auto& [n, v] : f.c) {
        mpq_class q = v.eval_L(x);
        if (q.get_den() != 1) throw Error(Error::Domain, "specialized coefficient is not an integer");
        r.add(n, MotCoeff(q.get_num()));
    }
    return r;
}

std::string qseries_to_json(const QSeries& f) {
    nlohmann::ordered_json j;
    j["order"] = f.order;
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (auto& [n, v] : f.c) t.push_back({{"q", n}, {"coeff", nlohmann::ordered_json::parse(coeff_to_json(v))}});
    j["terms"] = t;
    return j.dump();
}

std::string qseries_str(const QSeries& f) {
    std::ostringstream os;
    bool first = true;
    for (auto& [n, v] : f.c) {
        os << (first ? "" : " + ") << "(" << v.str() << ")";
        if (n) os << "*q^" << n;
        first = false;
    }
    if (first) os << "0";
    os << " + O(q^" << f.order + 1 << ")";
    return os.str();
}

std::string funceq_variant_str(int v) {
    std::string s = (v & kSubstInverse) ? "subst=w^-1" : "subst=w";
    std::string wn = (v & kNuInverse) ? "w^-1" : "w";
    std::string we = (v & kEtaInverse) ? "w^-1" : "w";
    s += (v & kFlipNu) ? ",nu=" + wn + "(rho)-rho" : ",nu=rho-" + wn + "(rho)";
    s += (v & kFlipEta) ? ",eta=rho^v-" + we + "(rho^v)" : ",eta=" + we + "(rho^v)-rho^v";
    return s;
}

void EisParams::validate() const {
    if (!rs) throw Error(Error::Malformed, "missing root system");
    if (static_cast<int>(b.b.a.size()) != rs->rank()) throw Error(Error::Malformed, "torsor label of wrong rank");
    if (b.d() <= 0) throw Error(Error::Domain, "negative index required: d must be positive");
    if (!is_antidominant(*rs, b.b)) throw Error(Error::Domain, "b = " + b.str() + " is not antidominant");
    curve.validate();
    if (funceq_variant < 0 || funceq_variant >= kFunceqVariants) throw Error(Error::Malformed, "unknown convention variant");
    long g0 = min_orbit_grade(*rs, b.b);
    if (H < g0) throw Error(Error::Window, "grade cutoff " + std::to_string(H) + " below the orbit minimum " + std::to_string(g0));
}

RatFnU psi_line(long m) {
    if (m < 0) throw Error(Error::Domain, "psi_line needs m >= 0 (antidominant b), got " + std::to_string(m));
    MotCoeff c = MotCoeff::L_pow(static_cast<int>(m + 1));
    return RatFnU(UPoly({c, -c}), UPoly({MotCoeff(1), -MotCoeff::L_pow(2)}));
}

LatticeSeries psi_series(RootSystemPtr rs, long m, const AffCoweight& x, long H, bool height_shift) {
    if (m < 0) throw Error(Error::Domain, "psi_line needs m >= 0 (antidominant b), got " + std::to_string(m));
    // (1-u)/(1-L^2 u) = 1 + sum_k (L^{2k} - L^{2k-2}) u^k
    int e = height_shift ? static_cast<int>(grade(*rs, x)) + 1 : 2;
    LatticeSeries r = unit_geometric(rs, MotCoeff(1) - MotCoeff::L_pow(-2), MotCoeff::L_pow(e), x, H);
    return r.scaled(MotCoeff::L_pow(static_cast<int>(m + 1)));
}

LatticeSeries term_Ew(const EisParams& p, const AffWeylElt& w) {
    const RootSystem& rs = *p.rs;
    AffCoweight wb = act_coweight(rs, w, p.b.b);
    long g = grade(rs, wb);
    if (g > p.H) return LatticeSeries(p.rs, std::min(g, p.H), p.H);
    LatticeSeries T = LatticeSeries::monomial(p.rs, wb, MotCoeff(1), p.H);
    for (const AffRoot& a : inversion_set(rs, w)) {
        long m = -pair(affine_root_weight(rs, a), p.b.b);
        T = mul(T, psi_series(p.rs, m, affine_coroot(rs, a), p.H - g, p.height_shift), p.H);
    }
    return T;
}

LatticeSeries eisenstein_E(const EisParams& p) {
    p.validate();
    auto ws = enumerate_weyl_by_grade(*p.rs, p.b.b, p.H);
    long g0 = window_bottom(*p.rs, p.b.b, ws);
    return par_sum(p.rs, g0, p.H, ws.size(), [&](size_t i) { return term_Ew(p, ws[i]); });
}

LatticeSeries K_series(RootSystemPtr rs, const MotCoeff& l, long H) {
    LatticeSeries R = LatticeSeries::one(rs, H);
    MotCoeff a = MotCoeff(1) - l;
    for (const AffRoot& r : positive_roots_to_grade(*rs, H))
        R = mul(R, unit_geometric(rs, a, MotCoeff(1), affine_coroot(*rs, r), H), H);
    return R;
}

std::string twist_rule_str(TwistRule r) {
    switch (r) {
        case TwistRule::Literal: return "literal";
        case TwistRule::Opposite: return "opposite";
        case TwistRule::Untwisted: return "untwisted";
    }
    return "?";
}

LatticeSeries hall_P(const EisParams& p, HallForm form, TwistRule rule) {
    p.validate();
    const RootSystem& rs = *p.rs;
    const AffCoweight& b = p.b.b;
    auto ws = enumerate_weyl_by_grade(rs, b, p.H);
    long g0 = window_bottom(rs, b, ws);
    long gb = grade(rs, b);
    const MotCoeff L = MotCoeff::L(), L2 = MotCoeff::L_pow(2);

    if (form == HallForm::Closed) {
        auto S = par_sum(p.rs, g0, p.H, ws.size(), [&](size_t i) {
            const AffWeylElt& w = ws[i];
            AffCoweight wb = act_coweight(rs, w, b);
            long g = grade(rs, wb);
            auto inv = inversion_set(rs, w);
            int e = static_cast<int>(inv.size() + g - gb);
            LatticeSeries T = LatticeSeries::monomial(p.rs, wb, MotCoeff::L_pow(e), p.H);
            for (const AffRoot& a : inv)
                T = mul(T, unit_geometric(p.rs, MotCoeff(1) - MotCoeff::L_pow(-2), L2, affine_coroot(rs, a), p.H - g), p.H);
            return T;
        });
        return mul(K_series(p.rs, L, p.H - g0), S, p.H);
    }

    // w*(t^b K(t)) factorwise: t^x -> L^{e(x)} t^{v x}
    auto shift = [&](const AffCoweight& x, const AffCoweight& vx) -> int {
        long e = grade(rs, vx) - grade(rs, x);
        if (rule == TwistRule::Opposite) e = -e;
        if (rule == TwistRule::Untwisted) e = 0;
        return static_cast<int>(e);
    };
    const MotCoeff one_minus_l = MotCoeff(1) - L, one_minus_linv = MotCoeff(1) - MotCoeff::L_pow(-1);
    return par_sum(p.rs, g0, p.H, ws.size(), [&](size_t i) {
        const AffWeylElt& v = ws[i];
        AffWeylElt vi = inverse(rs, v);
        AffCoweight vb = act_coweight(rs, v, b);
        long g = grade(rs, vb);
        long Hr = p.H - g;
        LatticeSeries T = LatticeSeries::monomial(p.rs, vb, MotCoeff::L_pow(shift(b, vb)), p.H);
        // factors whose image points in a negative direction: (1 - l c/u)/(1 - c/u) = l (1 - u/(l c))/(1 - u/c)
        for (const AffRoot& a : inversion_set(rs, v)) {
            AffCoweight x = affine_coroot(rs, a);
            AffCoweight y = affine_coroot(rs, act_root(rs, v, a));
            MotCoeff cinv = MotCoeff::L_pow(-shift(x, y));
            T = mul(T, unit_geometric(p.rs, one_minus_linv, cinv, -y, Hr), p.H).scaled(L);
        }
        // the remaining images are the positive roots gamma with v^{-1} gamma > 0
        for (const AffRoot& gam : positive_roots_to_grade(rs, Hr)) {
            AffRoot a = act_root(rs, vi, gam);
            if (!is_positive(rs, a)) continue;
            AffCoweight y = affine_coroot(rs, gam);
            MotCoeff c = MotCoeff::L_pow(shift(affine_coroot(rs, a), y));
            T = mul(T, unit_geometric(p.rs, one_minus_l, c, y, Hr), p.H);
        }
        return T;
    });
}

LatticeSeries denominator_D(RootSystemPtr rs, const CurveData& curve, long H, bool height_shift) {
    curve.validate();
    LatticeSeries R = LatticeSeries::one(rs, H);
    for (const AffRoot& r : positive_roots_to_grade(*rs, H)) {
        AffCoweight x = affine_coroot(*rs, r);
        LatticeSeries f(rs, 0, H);
        f.add_term(zero_cw(*rs), MotCoeff(1));
        f.add_term(x, -MotCoeff::L_pow(height_shift ? static_cast<int>(grade(*rs, x)) + 1 : 2));
        LatticeSeries phi(rs, 0, H);
        const auto& pc = curve.phi.coeffs();
        for (size_t k = 0; k < pc.size(); ++k) phi.add_term(x.times(static_cast<long>(k)), pc[k]);
        R = mul(mul(R, f, H), phi, H);
    }
    return R;
}

LatticeSeries numerator_N(const EisParams& p) {
    LatticeSeries E = eisenstein_E(p);
    return mul(E, denominator_D(p.rs, p.curve, p.H - E.gmin(), p.height_shift), p.H);
}

LatticeSeries finite_numerator(const LatticeSeries& E, const CurveData& curve, bool height_shift) {
    curve.validate();
    const RootSystem& rs = *E.rs();
    for (auto& [x, c] : E.terms())
        if (x.c != 0) throw Error(Error::Malformed, "finite numerator needs a z-supported series (q-exponent 0)");
    long H = E.H() - E.gmin();
    LatticeSeries R = LatticeSeries::one(E.rs(), H);
    for (int i = 0; i < rs.num_positive(); ++i) {
        AffCoweight x{rs.roots()[static_cast<size_t>(i)].coroot, 0, 0};
        LatticeSeries f(E.rs(), 0, H);
        f.add_term(zero_cw(rs), MotCoeff(1));
        f.add_term(x, -MotCoeff::L_pow(height_shift ? static_cast<int>(grade(rs, x)) + 1 : 2));
        LatticeSeries phi(E.rs(), 0, H);
        const auto& pc = curve.phi.coeffs();
        for (size_t k = 0; k < pc.size(); ++k) phi.add_term(x.times(static_cast<long>(k)), pc[k]);
        R = mul(mul(R, f, H), phi, H);
    }
    return mul(E, R, E.H());
}

LatticeSeries funceq_residual_variant(const LatticeSeries& N, const AffWeylElt& w, int variant, int genus, long* checked) {
    const RootSystem& rs = *N.rs();
    const long H = N.H();
    AffWeylElt u = (variant & kSubstInverse) ? inverse(rs, w) : w;
    AffWeylElt ui = inverse(rs, u);
    AffWeight rh = rho_hat(rs);
    AffWeylElt wi = inverse(rs, w);
    AffWeight nu = rh - act_weight(rs, (variant & kNuInverse) ? wi : w, rh);
    if (variant & kFlipNu) nu = -nu;
    AffCoweight r2 = two_rho_hat_dual(rs);
    AffCoweight e2 = act_coweight(rs, (variant & kEtaInverse) ? wi : w, r2) - r2;
    for (long v : e2.a)
        if (v % 2) throw Error(Error::Internal, "w(rho^v) - rho^v is not integral");
    if (e2.c % 2 || e2.m % 2) throw Error(Error::Internal, "w(rho^v) - rho^v is not integral");
    AffCoweight eta{scale(1, e2.a), e2.c / 2, e2.m / 2};
    for (auto& v : eta.a) v /= 2;
    if (variant & kFlipEta) eta = -eta;
    AffCoweight shift = eta.times(1 + 2L * genus);
    int pref = 2 * static_cast<int>(pair(rh, shift));
    MotCoeff sign = (length(rs, w) % 2) ? MotCoeff(-1) : MotCoeff(1);

    // RHS at y takes N at x = u(y - shift)
    std::map<AffCoweight, bool> cand;
    for (auto& [x, c] : N.terms()) {
        cand[x] = true;
        cand[act_coweight(rs, ui, x) + shift] = true;
    }
    std::vector<std::pair<AffCoweight, MotCoeff>> res;
    long cnt = 0, lo = N.gmin();
    for (auto& [y, unused] : cand) {
        (void)unused;
        if (grade(rs, y) > H) continue;
        AffCoweight x = act_coweight(rs, u, y - shift);
        if (grade(rs, x) > H) continue;
        ++cnt;
        MotCoeff r = N.coeff(y) - sign * N.coeff(x).shifted(2 * static_cast<int>(pair(nu, x)) + pref);
        if (!r.is_zero()) {
            res.push_back({y, r});
            lo = std::min(lo, grade(rs, y));
        }
    }
    if (cnt == 0) throw Error(Error::Window, "empty overlap window");
    if (checked) *checked = cnt;
    LatticeSeries out(N.rs(), lo, H);
    for (auto& [y, r] : res) out.add_term(y, r);
    return out;
}

FunceqReport funceq_residual(const EisParams& p, const LatticeSeries& N, const AffWeylElt& w) {
    FunceqReport rep;
    rep.variant = p.funceq_variant;
    for (int v = 0; v < kFunceqVariants; ++v) {
        long cnt = 0;
        LatticeSeries r = funceq_residual_variant(N, w, v, p.curve.genus, &cnt);
        if (r.empty()) rep.vanishing.push_back(v);
        if (v == p.funceq_variant) {
            rep.residual = r;
            rep.checked = cnt;
            if (!r.empty()) rep.first_nonzero = r.canonical().front().first;
        }
    }
    return rep;
}

namespace {

// a with Psi(a,f) - d Psi(a,a)/2 <= N, paired with that exponent
std::vector<std::pair<Vec, long>> theta_points(const RootSystem& rs, long d, const Vec& f, long N) {
    if (d <= 0) throw Error(Error::Domain, "theta needs d > 0");
    if (static_cast<int>(f.size()) != rs.rank()) throw Error(Error::Malformed, "f has the wrong rank");
    std::vector<mpq_class> center;
    for (long x : f) center.push_back(mpq_class(x, d));
    mpq_class fMf = -rs.psi(f, f);
    mpq_class R2 = 2 * (mpq_class(N) + fMf / (2 * d)) / d;
    std::vector<std::pair<Vec, long>> out;
    for (Vec& a : lattice_ball(rs, center, R2)) {
        long e = rs.psi(a, f) - d * rs.psi(a, a) / 2;
        if (e <= N) out.push_back({a, e});
    }
    return out;
}

}  // namespace

QSeries theta_zero(const RootSystem& rs, long d, const Vec& f, long Nq) {
    QSeries r{Nq, {}};
    for (auto& [a, e] : theta_points(rs, d, f, Nq)) r.add(e, MotCoeff(1));
    return r;
}

LatticeSeries theta_full(RootSystemPtr rs, long d, long Ngrade) {
    if (d <= 0) throw Error(Error::Domain, "theta needs d > 0");
    // grade(a, c) = (k/2)|a|^2 + <rho, a> with k = h^v d, |.|^2 = -Psi
    long k = rs->h_dual() * d;
    std::vector<mpq_class> s = gram_solve(*rs, rs->rho());
    mpq_class rMr = 0;
    for (int i = 0; i < rs->rank(); ++i) rMr += s[static_cast<size_t>(i)];
    std::vector<mpq_class> center;
    for (auto& x : s) center.push_back(-x / k);
    mpq_class R2 = 2 * (mpq_class(Ngrade) + rMr / (2 * k)) / k;
    std::vector<std::pair<AffCoweight, long>> pts;
    for (Vec& a : lattice_ball(*rs, center, R2)) {
        AffCoweight x{a, -d * rs->psi(a, a) / 2, -d};
        pts.push_back({x, grade(*rs, x)});
    }
    long lo = Ngrade;
    for (auto& [x, g] : pts) lo = std::min(lo, g);
    LatticeSeries r(rs, lo, Ngrade);
    for (auto& [x, g] : pts) r.add_term(x, MotCoeff(1));
    return r;
}

QSeries blowup_F(const RootSystem& rs, const TorsorLabel& lab, long Nq) {
    const AffCoweight& b = lab.b;
    if (static_cast<int>(b.a.size()) != rs.rank()) throw Error(Error::Malformed, "torsor label of wrong rank");
    if (lab.d() <= 0) throw Error(Error::Domain, "negative index required: d must be positive");
    if (!is_antidominant(rs, b)) throw Error(Error::Domain, "b = " + lab.str() + " is not antidominant");
    const Vec& f = b.a;
    const long m = b.c;
    auto pts = theta_points(rs, lab.d(), f, Nq);
    int nw = std::max(1, std::min<int>(worker_count(), static_cast<int>(pts.size())));
    std::vector<QSeries> part(static_cast<size_t>(nw), QSeries{Nq, {}});
    auto work = [&](int k) {
        for (size_t i = static_cast<size_t>(k); i < pts.size(); i += static_cast<size_t>(nw)) {
            const auto& [a, e] = pts[i];
            long ord = Nq - e;
            QSeries T{ord, {{0, MotCoeff(1)}}};
            for (const Root& al : rs.roots()) {
                long top = dot(al.omega, a);
                for (long n = 1; n <= top; ++n) {
                    // L^{-<f,alpha> + m n + 1} (1 - q^n)/(1 - L^2 q^n)
                    QSeries fac{ord, {}};
                    MotCoeff c = MotCoeff::L_pow(static_cast<int>(-dot(al.omega, f) + m * n + 1));
                    fac.add(0, c);
                    MotCoeff ck = c;
                    for (long j = 1; j * n <= ord; ++j) {
                        ck *= MotCoeff::L_pow(2);
                        fac.add(j * n, ck - ck.shifted(-4));
                    }
                    T = qmul(T, fac, ord);
                }
            }
            for (auto& [j, v] : T.c) part[static_cast<size_t>(k)].add(j + e, v);
        }
    };
    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> th;
        for (int k = 0; k < nw; ++k) th.emplace_back(work, k);
        for (auto& t : th) t.join();
    }
    QSeries r{Nq, {}};
    for (auto& p : part)
        for (auto& [j, v] : p.c) r.add(j, v);
    return r;
}

LatticeSeries weyl_kac_character(RootSystemPtr rs, const AffCoweight& b, long H, Rendering rend, bool imaginary) {
    if (!rs->simply_laced()) throw Error(Error::Domain, "Weyl-Kac character implemented for simply-laced types only");
    if (static_cast<int>(b.a.size()) != rs->rank()) throw Error(Error::Malformed, "weight of wrong rank");
    if (b.m > 0 || !is_antidominant(*rs, b)) throw Error(Error::Domain, "highest weight " + (-b).str() + " is not dominant");
    if (H < 0) throw Error(Error::Window, "grade cutoff must be non-negative");
    const RootSystem& R = *rs;
    // doubled Weyl vector of the dual system: (2 rho^v, 0, 2h)
    AffCoweight r2 = two_rho_hat_dual(R);
    AffCoweight y2 = b.times(2) - r2;
    long gr2 = grade(R, r2);
    auto ws = enumerate_weyl_by_grade(R, y2, 2 * H - gr2);
    std::vector<std::pair<AffCoweight, MotCoeff>> num;
    long lo = grade(R, b);
    for (const AffWeylElt& w : ws) {
        AffCoweight z = r2 + act_coweight(R, w, y2);
        for (long v : z.a)
            if (v % 2) throw Error(Error::Internal, "character term off the lattice");
        if (z.c % 2 || z.m % 2) throw Error(Error::Internal, "character term off the lattice");
        AffCoweight x{z.a, z.c / 2, z.m / 2};
        for (auto& v : x.a) v /= 2;
        num.push_back({x, (length(R, w) % 2) ? MotCoeff(-1) : MotCoeff(1)});
        lo = std::min(lo, grade(R, x));
    }
    LatticeSeries N(rs, lo, H);
    for (auto& [x, c] : num) N.add_term(x, c);
    long Hd = H - lo;
    LatticeSeries D = LatticeSeries::one(rs, Hd);
    for (const AffRoot& a : positive_roots_to_grade(R, Hd))
        D = mul(D, unit_geometric(rs, MotCoeff(1), MotCoeff(1), affine_coroot(R, a), Hd), Hd);
    if (imaginary) {
        AffCoweight q{Vec(static_cast<size_t>(R.rank()), 0), 1, 0};
        for (long n = 1; n * R.h_dual() <= Hd; ++n)
            for (int k = 0; k < R.rank(); ++k) D = mul(D, unit_geometric(rs, MotCoeff(1), MotCoeff(1), q.times(n), Hd), Hd);
    }
    LatticeSeries chi = mul(N, D, H);
    if (rend == Rendering::Inverse) return chi;
    // t -> t^{-1}: exact on the negated window
    LatticeSeries out(rs, -chi.H(), -chi.gmin());
    for (auto& [x, c] : chi.terms()) out.add_term(-x, c);
    return out;
}

LatticeSeries orbit_sum(RootSystemPtr rs, const AffCoweight& b, long H) {
    auto ws = enumerate_weyl_by_grade(*rs, b, H);
    LatticeSeries r(rs, window_bottom(*rs, b, ws), H);
    for (const AffWeylElt& w : ws) r.add_term(act_coweight(*rs, w, b), MotCoeff(1));
    return r;
}

bool agree_on_common_window(const LatticeSeries& a, const LatticeSeries& b) {
    long lo = std::max(a.gmin(), b.gmin()), hi = std::min(a.H(), b.H());
    if (lo > hi) return false;
    const RootSystem& rs = *a.rs();
    auto in = [&](const AffCoweight& x) {
        long g = grade(rs, x);
        return g >= lo && g <= hi;
    };
    for (auto& [x, c] : a.terms())
        if (in(x) && b.coeff(x) != c) return false;
    for (auto& [x, c] : b.terms())
        if (in(x) && a.coeff(x) != c) return false;
    return true;
}

}  // namespace ah
