#include "affhall/conventions.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "affhall/oracle.hpp"
#include "json.hpp"

namespace ah {

std::vector<WkCombo> wk_combos() {
    return {{Rendering::Inverse, true}, {Rendering::Inverse, false}, {Rendering::Direct, true}, {Rendering::Direct, false}};
}

std::string wk_combo_str(const WkCombo& c) {
    std::string s = c.rendering == Rendering::Inverse ? "chi(t^-1)" : "chi(t)";
    return s + (c.imaginary ? ",imaginary=on" : ",imaginary=off");
}

std::string convention_table() {
    std::ostringstream os;
    os << "affhall conventions v1\n";
    for (int v = 0; v < kFunceqVariants; ++v) os << "funceq " << v << " " << funceq_variant_str(v) << "\n";
    for (auto& s : rank2_signs()) os << "rank2 " << rank2_sign_str(s) << "\n";
    for (auto r : {TwistRule::Literal, TwistRule::Opposite, TwistRule::Untwisted}) os << "hall " << twist_rule_str(r) << "\n";
    for (auto& c : wk_combos()) os << "wk " << wk_combo_str(c) << "\n";
    return os.str();
}

std::string convention_table_hash() {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : convention_table()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<int> funceq_vanishing(const LatticeSeries& N, const AffWeylElt& w, int genus, bool at_L1) {
    std::vector<int> out;
    for (int v = 0; v < kFunceqVariants; ++v) {
        LatticeSeries r = funceq_residual_variant(N, w, v, genus);
        if (at_L1) r = eval_L(r, 1);
        if (r.empty()) out.push_back(v);
    }
    return out;
}

std::vector<WkCombo> wk_matches(RootSystemPtr rs, const TorsorLabel& b, long H) {
    EisParams p{rs, b, H, CurveData::p1(), 0};
    LatticeSeries P0 = eval_L(hall_P(p, HallForm::Closed), 0);
    std::vector<WkCombo> out;
    for (auto& c : wk_combos()) {
        LatticeSeries chi = weyl_kac_character(rs, b.b, H, c.rendering, c.imaginary);
        if (agree_on_common_window(P0, chi)) out.push_back(c);
    }
    return out;
}

namespace {

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    for (int x : a)
        for (int y : b)
            if (x == y) r.push_back(x);
    return r;
}

EisParams trivial_params(char T, int r, long H, bool hs) {
    auto rs = RootSystem::build(T, r);
    std::string lab;
    for (int i = 0; i < r; ++i) lab += i ? ",0" : "0";
    EisParams p{rs, TorsorLabel::parse(*rs, lab + ";0;-1"), H, CurveData::p1(), 0};
    p.height_shift = hs;
    return p;
}

FunceqEvidence finite_evidence(const std::string& name, const EisParams& p) {
    FunceqEvidence ev{name, {}};
    LatticeSeries N = finite_numerator(q_layer(eisenstein_E(p), 0), p.curve, p.height_shift);
    for (int u = 1; u < p.rs->weyl_size(); ++u) {
        AffWeylElt w = finite_elt(*p.rs, u);
        ev.per_element.push_back({weyl_str(*p.rs, w), funceq_vanishing(N, w, 0, false)});
    }
    return ev;
}

FunceqEvidence affine_L1_evidence(const std::string& name, const EisParams& p, const std::vector<std::string>& ws) {
    FunceqEvidence ev{name, {}};
    LatticeSeries N = numerator_N(p);
    for (auto& s : ws) ev.per_element.push_back({s, funceq_vanishing(N, parse_weyl(*p.rs, s), 0, true)});
    return ev;
}

}  // namespace

ConventionRecord resolve_conventions() {
    ConventionRecord rec;
    rec.table_hash = convention_table_hash();

    // Finite rank 1: the literal term formula is exact there (subbundle counts).
    rec.funceq_evidence.push_back(finite_evidence("A1 finite q^0 layer, generic L", trivial_params('A', 1, 8, false)));
    // Finite rank 2 with the height-shifted variable, anchored to flag counts over F_2.
    EisParams a2 = trivial_params('A', 2, 6, true);
    {
        LatticeSeries E0 = q_layer(eisenstein_E(a2), 0);
        bool ok = true;
        for (long k1 = 0; k1 <= 3; ++k1)
            for (long k2 = 0; k1 + k2 <= 3; ++k2) {
                MotCoeff c = E0.coeff(AffCoweight{{k1, k2}, 0, -1});
                if (c.eval_L(2) != mpq_class(count_flags_rank3(2, k1, k2))) ok = false;
            }
        rec.flag_oracle_agrees = ok;
    }
    rec.funceq_evidence.push_back(finite_evidence("A2 finite q^0 layer, height-shifted, generic L", a2));
    // Affine, with the residual taken at L = 1: pins the monomial map and the prefactor.
    rec.funceq_evidence.push_back(
        affine_L1_evidence("A1 affine at L=1", trivial_params('A', 1, 8, false), {"s0", "s1", "s0s1", "s1s0", "t:1"}));
    rec.funceq_evidence.push_back(
        affine_L1_evidence("A2 affine at L=1", trivial_params('A', 2, 6, false), {"s0", "s1", "s2", "s0s1", "s1s2", "t:1,0"}));

    std::vector<int> cand;
    for (int v = 0; v < kFunceqVariants; ++v) cand.push_back(v);
    if (!rec.flag_oracle_agrees) cand.clear();
    for (auto& ev : rec.funceq_evidence)
        for (auto& [w, vs] : ev.per_element) cand = intersect(cand, vs);
    rec.funceq_candidates = cand;
    if (!cand.empty()) rec.funceq_variant = cand.front();

    Rank2Series q = quot_series(10);
    for (auto& s : rank2_signs())
        if (funceq_residual_rank2(q, 0, s).is_zero()) rec.rank2_candidates.push_back(s);
    if (rec.rank2_candidates.size() == 1) rec.rank2_sign = rec.rank2_candidates.front();

    EisParams h = trivial_params('A', 1, 8, false);
    LatticeSeries closed = hall_P(h, HallForm::Closed);
    for (auto r : {TwistRule::Literal, TwistRule::Opposite, TwistRule::Untwisted})
        if (hall_P(h, HallForm::Definition, r) == closed) rec.hall_candidates.push_back(r);
    if (!rec.hall_candidates.empty()) rec.hall_rule = rec.hall_candidates.front();

    auto rs1 = RootSystem::build('A', 1);
    auto m1 = wk_matches(rs1, TorsorLabel::parse(*rs1, "0;0;-1"), 8);
    auto m2 = wk_matches(rs1, TorsorLabel::parse(*rs1, "0;0;-2"), 8);
    for (auto& c : m1)
        for (auto& d : m2)
            if (c == d) rec.wk_candidates.push_back(c);
    if (rec.wk_candidates.size() == 1) rec.wk_combo = rec.wk_candidates.front();
    return rec;
}

namespace {

using oj = nlohmann::ordered_json;

const char* rendering_str(Rendering r) { return r == Rendering::Inverse ? "inverse" : "direct"; }

}  // namespace

std::string record_to_json(const ConventionRecord& r) {
    oj j;
    j["table_hash"] = r.table_hash;
    oj f;
    f["variant"] = r.funceq_variant ? oj(*r.funceq_variant) : oj(nullptr);
    f["variant_str"] = r.funceq_variant ? oj(funceq_variant_str(*r.funceq_variant)) : oj(nullptr);
    f["candidates"] = r.funceq_candidates;
    oj ev = oj::array();
    for (auto& e : r.funceq_evidence) {
        oj x;
        x["name"] = e.name;
        oj per = oj::object();
        for (auto& [w, vs] : e.per_element) per[w] = vs;
        x["vanishing"] = per;
        ev.push_back(x);
    }
    f["evidence"] = ev;
    f["flag_oracle_agrees"] = r.flag_oracle_agrees;
    j["funceq"] = f;
    auto sign_json = [](const Rank2Sign& s) { return oj{{"sL", s.sL}, {"sz", s.sz}, {"str", rank2_sign_str(s)}}; };
    oj r2;
    r2["sign"] = r.rank2_sign ? sign_json(*r.rank2_sign) : oj(nullptr);
    r2["candidates"] = oj::array();
    for (auto& s : r.rank2_candidates) r2["candidates"].push_back(sign_json(s));
    j["rank2"] = r2;
    oj hl;
    hl["rule"] = r.hall_rule ? oj(twist_rule_str(*r.hall_rule)) : oj(nullptr);
    hl["candidates"] = oj::array();
    for (auto x : r.hall_candidates) hl["candidates"].push_back(twist_rule_str(x));
    j["hall"] = hl;
    auto wk_json = [](const WkCombo& c) { return oj{{"rendering", rendering_str(c.rendering)}, {"imaginary", c.imaginary}}; };
    oj wk;
    wk["combo"] = r.wk_combo ? wk_json(*r.wk_combo) : oj(nullptr);
    wk["candidates"] = oj::array();
    for (auto& c : r.wk_candidates) wk["candidates"].push_back(wk_json(c));
    j["weyl_kac"] = wk;
    return j.dump(2);
}

ConventionRecord record_from_json(const std::string& js) {
    ConventionRecord r;
    try {
        auto j = nlohmann::ordered_json::parse(js);
        r.table_hash = j.at("table_hash").get<std::string>();
        auto& f = j.at("funceq");
        if (!f.at("variant").is_null()) r.funceq_variant = f["variant"].get<int>();
        r.funceq_candidates = f.at("candidates").get<std::vector<int>>();
        r.flag_oracle_agrees = f.value("flag_oracle_agrees", false);
        for (auto& e : f.at("evidence")) {
            FunceqEvidence ev{e.at("name").get<std::string>(), {}};
            for (auto& [w, vs] : e.at("vanishing").items()) ev.per_element.push_back({w, vs.get<std::vector<int>>()});
            r.funceq_evidence.push_back(ev);
        }
        auto sign_from = [](const nlohmann::ordered_json& s) { return Rank2Sign{s.at("sL").get<int>(), s.at("sz").get<int>()}; };
        auto& r2 = j.at("rank2");
        if (!r2.at("sign").is_null()) r.rank2_sign = sign_from(r2["sign"]);
        for (auto& s : r2.at("candidates")) r.rank2_candidates.push_back(sign_from(s));
        auto rule_from = [](const std::string& s) {
            for (auto x : {TwistRule::Literal, TwistRule::Opposite, TwistRule::Untwisted})
                if (twist_rule_str(x) == s) return x;
            throw Error(Error::Malformed, "unknown twist rule " + s);
        };
        auto& hl = j.at("hall");
        if (!hl.at("rule").is_null()) r.hall_rule = rule_from(hl["rule"].get<std::string>());
        for (auto& s : hl.at("candidates")) r.hall_candidates.push_back(rule_from(s.get<std::string>()));
        auto wk_from = [](const nlohmann::ordered_json& c) {
            return WkCombo{c.at("rendering").get<std::string>() == "inverse" ? Rendering::Inverse : Rendering::Direct,
                           c.at("imaginary").get<bool>()};
        };
        auto& wk = j.at("weyl_kac");
        if (!wk.at("combo").is_null()) r.wk_combo = wk_from(wk["combo"]);
        for (auto& c : wk.at("candidates")) r.wk_candidates.push_back(wk_from(c));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Error::Malformed, std::string("convention record: ") + e.what());
    }
    if (r.funceq_variant && (*r.funceq_variant < 0 || *r.funceq_variant >= kFunceqVariants))
        throw Error(Error::Malformed, "convention record: variant out of range");
    return r;
}

void require_fresh(const ConventionRecord& r) {
    if (r.table_hash != convention_table_hash())
        throw Error(Error::Domain, "stale convention record (table hash " + r.table_hash + ", code has " +
                                       convention_table_hash() + "); rerun selftest");
}

}  // namespace ah
