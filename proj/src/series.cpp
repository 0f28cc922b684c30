#include "affhall/series.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace ah {

LatticeSeries::LatticeSeries(RootSystemPtr rs, long gmin, long H) : rs_(std::move(rs)), gmin_(gmin), H_(H) {
    if (H_ < gmin_) throw Error(Error::Window, "window underflow: H < gmin");
}

LatticeSeries LatticeSeries::one(RootSystemPtr rs, long H) {
    AffCoweight z{Vec(static_cast<size_t>(rs->rank()), 0), 0, 0};
    return monomial(std::move(rs), z, MotCoeff(1), H);
}

LatticeSeries LatticeSeries::monomial(RootSystemPtr rs, const AffCoweight& x, const MotCoeff& c, long H) {
    long g = grade(*rs, x);
    LatticeSeries s(rs, std::min(g, H), H);
    s.add_term(x, c);
    return s;
}

MotCoeff LatticeSeries::coeff(const AffCoweight& x) const {
    auto it = t_.find(x);
    return it == t_.end() ? MotCoeff() : it->second;
}

void LatticeSeries::add_term(const AffCoweight& x, const MotCoeff& c) {
    if (c.is_zero()) return;
    long g = grade(*rs_, x);
    if (g > H_) return;
    if (g < gmin_) throw Error(Error::Window, "term below the window lower bound");
    auto [it, fresh] = t_.try_emplace(x, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

LatticeSeries& LatticeSeries::operator+=(const LatticeSeries& o) {
    gmin_ = std::min(gmin_, o.gmin_);
    if (o.H_ < H_) *this = truncate(o.H_);
    for (auto& [x, c] : o.t_) add_term(x, c);
    return *this;
}

LatticeSeries& LatticeSeries::operator-=(const LatticeSeries& o) {
    gmin_ = std::min(gmin_, o.gmin_);
    if (o.H_ < H_) *this = truncate(o.H_);
    for (auto& [x, c] : o.t_) add_term(x, -c);
    return *this;
}

LatticeSeries LatticeSeries::scaled(const MotCoeff& c) const {
    LatticeSeries r(rs_, gmin_, H_);
    if (c.is_zero()) return r;
    for (auto& [x, v] : t_) r.t_.emplace_hint(r.t_.end(), x, v * c);
    return r;
}

LatticeSeries LatticeSeries::shifted(const AffCoweight& x) const {
    long g = grade(*rs_, x);
    LatticeSeries r(rs_, gmin_ + g, H_ + g);
    for (auto& [y, v] : t_) r.t_.emplace(y + x, v);
    return r;
}

LatticeSeries LatticeSeries::truncate(long H) const {
    LatticeSeries r(rs_, std::min(gmin_, H), std::min(H, H_));
    for (auto& [x, v] : t_)
        if (grade(*rs_, x) <= r.H_) r.t_.emplace_hint(r.t_.end(), x, v);
    return r;
}

LatticeSeries LatticeSeries::with_window(long gmin, long H) const {
    LatticeSeries r(rs_, gmin, H);
    for (auto& [x, v] : t_) r.add_term(x, v);
    return r;
}

bool operator==(const LatticeSeries& a, const LatticeSeries& b) {
    return a.gmin_ == b.gmin_ && a.H_ == b.H_ && a.t_ == b.t_ &&
           (a.rs_ == b.rs_ || (a.rs_ && b.rs_ && a.rs_->label() == b.rs_->label()));
}

std::vector<std::pair<AffCoweight, MotCoeff>> LatticeSeries::canonical() const {
    std::vector<std::pair<AffCoweight, MotCoeff>> v(t_.begin(), t_.end());
    std::stable_sort(v.begin(), v.end(), [&](const auto& x, const auto& y) {
        long gx = grade(*rs_, x.first), gy = grade(*rs_, y.first);
        if (gx != gy) return gx < gy;
        if (x.first.c != y.first.c) return x.first.c < y.first.c;
        if (x.first.a != y.first.a) return x.first.a < y.first.a;
        return x.first.m < y.first.m;
    });
    return v;
}

bool LatticeSeries::v_homogeneous(long m) const {
    return std::all_of(t_.begin(), t_.end(), [&](const auto& kv) { return kv.first.m == m; });
}

std::set<long> LatticeSeries::grades() const {
    std::set<long> g;
    for (auto& [x, v] : t_) g.insert(grade(*rs_, x));
    return g;
}

LatticeSeries mul(const LatticeSeries& a, const LatticeSeries& b, std::optional<long> cap) {
    if (a.rs_->label() != b.rs_->label()) throw Error(Error::Malformed, "series over different root systems");
    long H = std::min(a.H_ + b.gmin_, b.H_ + a.gmin_);
    if (cap) H = std::min(H, *cap);
    long gmin = a.gmin_ + b.gmin_;
    if (H < gmin) throw Error(Error::Window, "window underflow in product");
    const RootSystem& rs = *a.rs_;
    std::vector<std::pair<long, const std::pair<const AffCoweight, MotCoeff>*>> bv;
    for (auto& kv : b.t_) bv.push_back({grade(rs, kv.first), &kv});
    std::sort(bv.begin(), bv.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    LatticeSeries r(a.rs_, gmin, H);
    for (auto& [xa, ca] : a.t_) {
        long ga = grade(rs, xa);
        for (auto& [gb, kv] : bv) {
            if (ga + gb > H) break;
            r.add_term(xa + kv->first, ca * kv->second);
        }
    }
    return r;
}

LatticeSeries expand_unit_inverse(RootSystemPtr rs, const MotCoeff& c, const AffCoweight& mu, long H) {
    long g = grade(*rs, mu);
    if (g <= 0) throw Error(Error::Domain, "non-expandable direction: grade of " + mu.str() + " is not positive");
    LatticeSeries r(rs, 0, std::max(H, 0L));
    MotCoeff ck(1);
    AffCoweight x{Vec(static_cast<size_t>(rs->rank()), 0), 0, 0};
    for (long k = 0; k * g <= H; ++k) {
        r.add_term(x, ck);
        x = x + mu;
        ck *= c;
        if (ck.is_zero()) break;
    }
    return r;
}

AffCoweight twist_exponent(const RootSystem& rs, const AffWeylElt& w, const AffCoweight& mu) {
    return act_coweight(rs, inverse(rs, w), mu);
}

LatticeSeries weyl_twist_substitute(const LatticeSeries& f, const AffWeylElt& w, const AffWeight& nu) {
    const RootSystem& rs = *f.rs();
    AffWeylElt wi = inverse(rs, w);
    std::vector<std::pair<AffCoweight, MotCoeff>> img;
    long lo = 0, hi = 0;
    bool first = true;
    for (auto& [x, c] : f.terms()) {
        AffCoweight y = act_coweight(rs, wi, x);
        long g = grade(rs, y);
        lo = first ? g : std::min(lo, g);
        hi = first ? g : std::max(hi, g);
        first = false;
        img.push_back({y, c.shifted(2 * static_cast<int>(pair(nu, x)))});
    }
    LatticeSeries r(f.rs(), lo, hi);
    for (auto& [y, c] : img) r.add_term(y, c);
    return r;
}

LatticeSeries q_layer(const LatticeSeries& f, long c) {
    LatticeSeries r(f.rs(), f.gmin(), f.H());
    for (auto& [x, v] : f.terms())
        if (x.c == c) r.add_term(x, v);
    return r;
}

LatticeSeries eval_L(const LatticeSeries& f, long x) {
    LatticeSeries r(f.rs(), f.gmin(), f.H());
    for (auto& [y, v] : f.terms()) {
        mpq_class q = v.eval_L(x);
        if (q.get_den() != 1) throw Error(Error::Domain, "specialized coefficient is not an integer");
        r.add_term(y, MotCoeff(q.get_num()));
    }
    return r;
}

std::map<AffCoweight, mpz_class> point_count(const LatticeSeries& f, long q) {
    std::map<AffCoweight, mpz_class> out;
    SpecMode m = SpecMode::point_count(q);
    for (auto& [y, v] : f.terms()) out[y] = *specialize(v, m).integer;
    return out;
}

int worker_count() {
    if (const char* e = std::getenv("AFFHALL_WORKERS")) {
        int n = std::atoi(e);
        if (n >= 1) return n;
    }
    unsigned h = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(h, 1u, 8u));
}

LatticeSeries sum_all(RootSystemPtr rs, long gmin, long H, std::vector<LatticeSeries> parts) {
    int nw = std::min<int>(worker_count(), static_cast<int>(parts.size()));
    if (nw <= 1) {
        LatticeSeries acc(rs, gmin, H);
        for (auto& p : parts) acc += p;
        return acc;
    }
    std::vector<LatticeSeries> partial(static_cast<size_t>(nw), LatticeSeries(rs, gmin, H));
    std::vector<std::thread> th;
    for (int k = 0; k < nw; ++k)
        th.emplace_back([&, k] {
            for (size_t i = static_cast<size_t>(k); i < parts.size(); i += static_cast<size_t>(nw)) partial[static_cast<size_t>(k)] += parts[i];
        });
    for (auto& t : th) t.join();
    LatticeSeries acc(rs, gmin, H);
    for (auto& p : partial) acc += p;
    return acc;
}

std::optional<SeriesDiff> first_difference(const LatticeSeries& a, const LatticeSeries& b) {
    long H = std::min(a.H(), b.H());
    LatticeSeries d = a.truncate(H) - b.truncate(H);
    if (d.empty()) return std::nullopt;
    auto c = d.canonical();
    const AffCoweight& x = c.front().first;
    return SeriesDiff{x, a.coeff(x), b.coeff(x)};
}

std::string coeff_to_json(const MotCoeff& c) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (auto& [e, v] : c.terms()) j[std::to_string(e)] = v.get_str();
    return j.dump();
}

static MotCoeff coeff_from(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(Error::Malformed, "coefficient must be a JSON object");
    MotCoeff c;
    for (auto& [k, v] : j.items()) {
        int e;
        try {
            e = std::stoi(k);
        } catch (const std::exception&) {
            throw Error(Error::Malformed, "bad s-exponent '" + k + "'");
        }
        mpz_class z;
        std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        if (z.set_str(s, 10) != 0) throw Error(Error::Malformed, "bad integer '" + s + "'");
        c += MotCoeff::s_pow(e, z);
    }
    return c;
}

MotCoeff coeff_from_json(const std::string& js) {
    try {
        return coeff_from(nlohmann::json::parse(js));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Error::Malformed, std::string("invalid JSON: ") + e.what());
    }
}

std::string series_to_json(const LatticeSeries& f) {
    nlohmann::ordered_json j;
    j["root_system"] = f.rs()->label();
    j["window"] = {{"gmin", f.gmin()}, {"H", f.H()}};
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (auto& [x, c] : f.canonical()) {
        nlohmann::ordered_json t;
        t["z"] = x.a;
        t["q"] = x.c;
        t["v"] = x.m;
        t["coeff"] = nlohmann::ordered_json::parse(coeff_to_json(c));
        terms.push_back(t);
    }
    j["terms"] = terms;
    j["order"] = "canonical";
    return j.dump();
}

LatticeSeries series_from_json(RootSystemPtr rs, const std::string& js) {
    try {
        auto j = nlohmann::json::parse(js);
        LatticeSeries s(rs, j.at("window").at("gmin").get<long>(), j.at("window").at("H").get<long>());
        for (auto& t : j.at("terms")) {
            AffCoweight x{t.at("z").get<Vec>(), t.at("q").get<long>(), t.at("v").get<long>()};
            if (static_cast<int>(x.a.size()) != rs->rank()) throw Error(Error::Malformed, "term of wrong rank");
            s.add_term(x, coeff_from(t.at("coeff")));
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Error::Malformed, std::string("invalid series JSON: ") + e.what());
    }
}

std::string series_table(const LatticeSeries& f) {
    std::map<long, std::vector<std::pair<AffCoweight, MotCoeff>>> layers;
    for (auto& kv : f.canonical()) layers[kv.first.c].push_back(kv);
    std::ostringstream os;
    os << "# " << f.rs()->label() << " window [" << f.gmin() << ", " << f.H() << "]\n";
    for (auto& [c, terms] : layers) {
        os << "q^" << c << ":\n";
        size_t w = 0;
        std::vector<std::string> lab;
        for (auto& [x, v] : terms) {
            std::ostringstream l;
            l << "  z^[";
            for (size_t i = 0; i < x.a.size(); ++i) l << (i ? "," : "") << x.a[i];
            l << "] v^" << x.m << " (grade " << grade(*f.rs(), x) << ")";
            lab.push_back(l.str());
            w = std::max(w, lab.back().size());
        }
        for (size_t i = 0; i < terms.size(); ++i)
            os << std::left << std::setw(static_cast<int>(w)) << lab[i] << " : " << terms[i].second.str() << "\n";
    }
    return os.str();
}

}  // namespace ah
