#include "affhall/rank2.hpp"

#include "affhall/series.hpp"
#include "json.hpp"

namespace ah {

MotCoeff Rank2Series::at(long a1) const {
    auto it = c.find(a1);
    return it == c.end() ? MotCoeff() : it->second;
}

std::vector<MotCoeff> Rank2Series::stream() const {
    std::vector<MotCoeff> v;
    for (long k = 0; k <= order; ++k) v.push_back(at(-k));
    return v;
}

Rank2Series rank2_from_stream(const std::vector<MotCoeff>& xs) {
    if (xs.empty()) throw Error(Error::Malformed, "empty coefficient stream");
    Rank2Series s;
    s.order = static_cast<long>(xs.size()) - 1;
    for (size_t k = 0; k < xs.size(); ++k)
        if (!xs[k].is_zero()) s.c[-static_cast<long>(k)] = xs[k];
    return s;
}

Rank2Series quot_series(long order) {
    if (order < 0) throw Error(Error::Bounds, "negative order");
    std::vector<MotCoeff> xs;
    for (long k = 0; k <= order; ++k) {
        // (L^{2k+2} - 1)/(L - 1)
        MotCoeff v;
        for (long j = 0; j <= 2 * k + 1; ++j) v += MotCoeff::L_pow(static_cast<int>(j));
        xs.push_back(v);
    }
    Rank2Series s = rank2_from_stream(xs);
    MotCoeff L = MotCoeff::L();
    UPoly den = UPoly(std::vector<MotCoeff>{1, -1}) * UPoly(std::vector<MotCoeff>{1, -MotCoeff::L_pow(2)});
    s.closed = RatFnU(UPoly(L + MotCoeff(1)), den);
    return s;
}

Rank2Series subbundle_series_from_quot(const Rank2Series& q, const RatFnU& zeta) {
    auto z = zeta.expand(static_cast<int>(q.order));
    if (!z[0].is_unit()) throw Error(Error::Domain, "non-invertible leading coefficient");
    auto qs = q.stream();
    std::vector<MotCoeff> e;
    for (size_t k = 0; k < qs.size(); ++k) {
        MotCoeff x = qs[k];
        for (size_t j = 1; j <= k; ++j) x -= z[j] * e[k - j];
        e.push_back(x.div_unit(z[0]));
    }
    Rank2Series s = rank2_from_stream(e);
    if (q.closed) s.closed = *q.closed * RatFnU(zeta.den(), zeta.num());
    return s;
}

std::vector<Rank2Sign> rank2_signs() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }

std::string rank2_sign_str(const Rank2Sign& s) {
    std::string r = s.sL > 0 ? "(L z1/z2)" : "(L^-1 z1/z2)";
    return r + (s.sz > 0 ? "^(2-2g)" : "^-(2-2g)");
}

RatFnU funceq_residual_rank2(const Rank2Series& s, int genus, const Rank2Sign& sign) {
    if (!s.closed) throw Error(Error::Malformed, "rank-2 check needs a closed form");
    if (genus < 0) throw Error(Error::Malformed, "negative genus");
    // (z1, z2) -> (L z2, L^-1 z1) sends x to L^-2 / x
    RatFnU image = s.closed->subst_scaled(MotCoeff::L_pow(-2), -1);
    int e = sign.sz * (2 - 2 * genus);
    // (L^{sL} / x)^e
    MotCoeff c = MotCoeff::L_pow(sign.sL * e);
    RatFnU pref = e >= 0 ? RatFnU(UPoly(c), UPoly::monomial(e)) : RatFnU(UPoly::monomial(-e, c), UPoly(MotCoeff(1)));
    return *s.closed - pref * image;
}

Rank2Report check_rank2(const Rank2Series& s, int genus, const Rank2Sign& sign) {
    Rank2Report r;
    r.residual = funceq_residual_rank2(s, genus, sign);
    for (auto& v : rank2_signs())
        if (funceq_residual_rank2(s, genus, v).is_zero()) r.vanishing.push_back(v);
    return r;
}

std::string rank2_to_json(const Rank2Series& s) {
    nlohmann::ordered_json j;
    j["order"] = s.order;
    auto arr = nlohmann::ordered_json::array();
    for (long k = 0; k <= s.order; ++k)
        arr.push_back({{"a1", -k}, {"coeff", nlohmann::ordered_json::parse(coeff_to_json(s.at(-k)))}});
    j["coefficients"] = arr;
    if (s.closed) j["closed"] = s.closed->str();
    return j.dump();
}

Rank2Series rank2_from_json(const std::string& js) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(js);
    } catch (const std::exception& e) {
        throw Error(Error::Malformed, std::string("rank-2 stream: ") + e.what());
    }
    const nlohmann::json& arr = j.is_array() ? j : j.at("coefficients");
    std::map<long, MotCoeff> m;
    long lo = 0;
    for (auto& t : arr) {
        if (!t.contains("a1") || !t.contains("coeff")) throw Error(Error::Malformed, "rank-2 entries need a1 and coeff");
        long a1 = t["a1"].get<long>();
        if (a1 > 0) throw Error(Error::Domain, "a1 must be <= 0");
        m[a1] = coeff_from_json(t["coeff"].dump());
        lo = std::min(lo, a1);
    }
    std::vector<MotCoeff> xs;
    for (long k = 0; k <= -lo; ++k) xs.push_back(m.count(-k) ? m[-k] : MotCoeff());
    return rank2_from_stream(xs);
}

}  // namespace ah
