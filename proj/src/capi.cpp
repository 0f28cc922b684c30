#include "affhall.h"

#include <cstring>
#include <cstdlib>
#include <functional>
#include <new>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "affhall/conventions.hpp"
#include "affhall/eisenstein.hpp"
#include "affhall/oracle.hpp"
#include "affhall/rank2.hpp"

struct ah_rootsys {
    ah::RootSystemPtr rs;
};

struct ah_series {
    ah::LatticeSeries s;
};

namespace {

using oj = nlohmann::ordered_json;

thread_local std::string g_last_error;

ah_status fail(ah_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

ah_status map_kind(ah::Error::Kind k) {
    switch (k) {
        case ah::Error::Malformed: return AH_E_MALFORMED;
        case ah::Error::Domain: return AH_E_DOMAIN;
        case ah::Error::Bounds: return AH_E_BOUNDS;
        case ah::Error::Window: return AH_E_WINDOW;
        default: return AH_E_INTERNAL;
    }
}

// runs f, translating exceptions into status codes
ah_status guard(const std::function<void()>& f) {
    try {
        g_last_error.clear();
        f();
        return AH_OK;
    } catch (const ah::Error& e) {
        std::string m = e.what();
        if (m.rfind("stale convention record", 0) == 0) return fail(AH_E_STALE, m);
        return fail(map_kind(e.kind()), m);
    } catch (const nlohmann::json::exception& e) {
        return fail(AH_E_MALFORMED, std::string("json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        return fail(AH_E_ARG, e.what());
    } catch (const std::bad_alloc&) {
        return fail(AH_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(AH_E_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void need(const void* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string("null argument: ") + what);
}

ah::EisParams params(const ah_rootsys* rs, const char* b, long H) {
    need(rs, "rootsys");
    need(b, "b");
    ah::EisParams p;
    p.rs = rs->rs;
    p.b = ah::TorsorLabel::parse(*rs->rs, b);
    p.H = H;
    p.validate();
    return p;
}

ah_series* wrap(ah::LatticeSeries s) { return new ah_series{std::move(s)}; }

oj coeff_json(const ah::MotCoeff& c) { return oj::parse(ah::coeff_to_json(c)); }

oj specialized_json(const ah::MotCoeff& c, const ah::SpecMode& m) {
    ah::Specialized v = ah::specialize(c, m);
    if (v.integer) return v.integer->get_str();
    return coeff_json(*v.coeff);
}

oj specialized_qseries(const ah::QSeries& f, const ah::SpecMode& m) {
    oj t = oj::array();
    for (auto& [n, v] : f.c) t.push_back({{"q", n}, {"coeff", specialized_json(v, m)}});
    return {{"order", f.order}, {"terms", t}};
}

std::string qseries_table(const ah::QSeries& f, const ah::SpecMode& m) {
    std::ostringstream os;
    for (long n = 0; n <= f.order; ++n) {
        auto it = f.c.find(n);
        if (it == f.c.end()) continue;
        os << "q^" << n << " : " << ah::specialize(it->second, m).str() << "\n";
    }
    for (auto& [n, v] : f.c)
        if (n < 0) os << "q^" << n << " : " << ah::specialize(v, m).str() << "\n";
    os << "O(q^" << f.order + 1 << ")\n";
    return os.str();
}

oj series_obj(const ah::LatticeSeries& s) { return oj::parse(ah::series_to_json(s)); }

std::string diff_str(const ah::RootSystem& rs, const ah::LatticeSeries& a, const ah::LatticeSeries& b) {
    auto d = ah::first_difference(a, b);
    if (!d) return "";
    std::ostringstream os;
    os << "first difference at " << d->x.str() << " (grade " << ah::grade(rs, d->x) << "): " << d->lhs.str()
       << " vs " << d->rhs.str();
    return os.str();
}

}  // namespace

extern "C" {

const char* ah_version(void) { return "0.1.0"; }

const char* ah_last_error(void) { return g_last_error.c_str(); }

void ah_string_free(char* s) { std::free(s); }

ah_status ah_rootsys_new(char type, int rank, ah_rootsys** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    return guard([&] { *out = new ah_rootsys{ah::RootSystem::build(type, rank)}; });
}

void ah_rootsys_free(ah_rootsys* rs) { delete rs; }

ah_status ah_rootsys_json(const ah_rootsys* rs, char** out) {
    if (!rs || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] { *out = dup(rs->rs->to_json()); });
}

ah_status ah_torsor_labels(const ah_rootsys* rs, long d, char** out) {
    if (!rs || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] {
        oj labels = oj::array();
        for (auto& t : ah::torsor_labels(*rs->rs, d)) labels.push_back(t.str());
        *out = dup(oj{{"d", d}, {"count", labels.size()}, {"labels", labels}}.dump());
    });
}

void ah_series_free(ah_series* s) { delete s; }

ah_status ah_series_render(const ah_series* s, ah_format fmt, char** out) {
    if (!s || !out) return fail(AH_E_ARG, "null argument");
    if (fmt != AH_FORMAT_JSON && fmt != AH_FORMAT_TABLE) return fail(AH_E_ARG, "unknown format");
    return guard([&] { *out = dup(fmt == AH_FORMAT_JSON ? ah::series_to_json(s->s) : ah::series_table(s->s)); });
}

ah_status ah_series_parse(const ah_rootsys* rs, const char* json, ah_series** out) {
    if (!rs || !json || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] { *out = wrap(ah::series_from_json(rs->rs, json)); });
}

ah_status ah_series_equal(const ah_series* a, const ah_series* b, int* equal) {
    if (!a || !b || !equal) return fail(AH_E_ARG, "null argument");
    return guard([&] { *equal = a->s == b->s ? 1 : 0; });
}

ah_status ah_series_size(const ah_series* s, size_t* n) {
    if (!s || !n) return fail(AH_E_ARG, "null argument");
    *n = s->s.size();
    return AH_OK;
}

ah_status ah_series_specialize(const ah_series* s, const char* spec, char** out) {
    if (!s || !spec || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] {
        ah::SpecMode m = ah::SpecMode::parse(spec);
        oj terms = oj::array();
        for (auto& [x, c] : s->s.canonical())
            terms.push_back({{"z", x.a}, {"q", x.c}, {"v", x.m}, {"value", specialized_json(c, m)}});
        *out = dup(oj{{"spec", m.str()}, {"window", {{"gmin", s->s.gmin()}, {"H", s->s.H()}}}, {"terms", terms}}.dump());
    });
}

ah_status ah_eisenstein(const ah_rootsys* rs, const char* b, long H, int height_shift, ah_series** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    return guard([&] {
        auto p = params(rs, b, H);
        p.height_shift = height_shift != 0;
        *out = wrap(ah::eisenstein_E(p));
    });
}

ah_status ah_numerator(const ah_rootsys* rs, const char* b, long H, int height_shift, ah_series** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    return guard([&] {
        auto p = params(rs, b, H);
        p.height_shift = height_shift != 0;
        *out = wrap(ah::numerator_N(p));
    });
}

ah_status ah_hall(const ah_rootsys* rs, const char* b, long H, int closed, ah_twist rule, ah_series** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    if (rule < AH_TWIST_LITERAL || rule > AH_TWIST_UNTWISTED) return fail(AH_E_ARG, "unknown twist rule");
    return guard([&] {
        auto p = params(rs, b, H);
        ah::TwistRule r = rule == AH_TWIST_LITERAL    ? ah::TwistRule::Literal
                          : rule == AH_TWIST_OPPOSITE ? ah::TwistRule::Opposite
                                                      : ah::TwistRule::Untwisted;
        *out = wrap(ah::hall_P(p, closed ? ah::HallForm::Closed : ah::HallForm::Definition, r));
    });
}

ah_status ah_weyl_kac(const ah_rootsys* rs, const char* b, long H, int direct, int imaginary, ah_series** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    return guard([&] {
        auto p = params(rs, b, H);
        *out = wrap(ah::weyl_kac_character(p.rs, p.b.b, H, direct ? ah::Rendering::Direct : ah::Rendering::Inverse,
                                           imaginary != 0));
    });
}

ah_status ah_theta_full(const ah_rootsys* rs, long d, long grade, ah_series** out) {
    if (!rs || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] { *out = wrap(ah::theta_full(rs->rs, d, grade)); });
}

ah_status ah_theta_zero(const ah_rootsys* rs, long d, const char* f, long order, ah_format fmt, char** out) {
    if (!rs || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] {
        ah::Vec fv(static_cast<size_t>(rs->rs->rank()), 0);
        if (f && *f) {
            fv.clear();
            std::stringstream ss(f);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                size_t used = 0;
                long x = 0;
                try {
                    x = std::stol(tok, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used == 0 || used != tok.size()) throw ah::Error(ah::Error::Malformed, "bad coordinate '" + tok + "' in f");
                fv.push_back(x);
            }
        }
        ah::QSeries t = ah::theta_zero(*rs->rs, d, fv, order);
        ah::SpecMode g = ah::SpecMode::generic();
        *out = dup(fmt == AH_FORMAT_TABLE ? qseries_table(t, g) : specialized_qseries(t, g).dump());
    });
}

ah_status ah_blowup(const ah_rootsys* rs, const char* b, long order, const char* spec, ah_format fmt, char** out) {
    if (!rs || !b || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] {
        ah::SpecMode m = ah::SpecMode::parse(spec ? spec : "generic");
        ah::QSeries F = ah::blowup_F(*rs->rs, ah::TorsorLabel::parse(*rs->rs, b), order);
        if (fmt == AH_FORMAT_TABLE) {
            *out = dup(qseries_table(F, m));
        } else {
            oj j = specialized_qseries(F, m);
            j["spec"] = m.str();
            if (m.kind == ah::SpecMode::Generic) j["text"] = ah::qseries_str(F);
            *out = dup(j.dump());
        }
    });
}

ah_status ah_zeta(int genus, int n, const char* spec, ah_format fmt, char** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    return guard([&] {
        if (n < 0) throw ah::Error(ah::Error::Bounds, "order must be non-negative");
        ah::SpecMode m = ah::SpecMode::parse(spec ? spec : "generic");
        ah::CurveData c = ah::CurveData::serre_model(genus);
        ah::RatFnU z = ah::zeta_from_curve(c);
        std::vector<ah::MotCoeff> ex = z.expand(n);
        ah::RatFnU res = ah::zeta_funceq_residual(z, genus);
        if (fmt == AH_FORMAT_TABLE) {
            std::ostringstream os;
            os << "zeta = " << z.str() << "\n";
            for (int i = 0; i <= n; ++i) os << "u^" << i << " : " << ah::specialize(ex[static_cast<size_t>(i)], m).str() << "\n";
            os << "funceq residual : " << (res.is_zero() ? "0" : res.str()) << "\n";
            *out = dup(os.str());
            return;
        }
        oj cs = oj::array();
        for (auto& e : ex) cs.push_back(specialized_json(e, m));
        *out = dup(oj{{"genus", genus},
                      {"spec", m.str()},
                      {"closed", z.str()},
                      {"coefficients", cs},
                      {"funceq_residual", res.is_zero() ? "0" : res.str()}}
                       .dump());
    });
}

ah_status ah_check_funceq(const ah_rootsys* rs, const char* b, long H, const char* w, int variant, int genus,
                          int height_shift, char** out, int* passed) {
    if (!w || !out || !passed) return fail(AH_E_ARG, "null argument");
    if (variant < 0 || variant >= ah::kFunceqVariants) return fail(AH_E_ARG, "variant out of range");
    return guard([&] {
        auto p = params(rs, b, H);
        p.curve = ah::CurveData::serre_model(genus);
        p.funceq_variant = variant;
        p.height_shift = height_shift != 0;
        ah::AffWeylElt we = ah::parse_weyl(*p.rs, w);
        ah::LatticeSeries N = ah::numerator_N(p);
        ah::FunceqReport rep = ah::funceq_residual(p, N, we);
        oj j;
        j["w"] = ah::weyl_str(*p.rs, we);
        j["variant"] = variant;
        j["variant_str"] = ah::funceq_variant_str(variant);
        j["checked_monomials"] = rep.checked;
        j["residual"] = rep.residual.empty() ? oj("0") : series_obj(rep.residual);
        j["residual_terms"] = rep.residual.size();
        if (rep.first_nonzero) {
            j["first_nonzero"] = rep.first_nonzero->str();
            j["first_nonzero_coeff"] = rep.residual.coeff(*rep.first_nonzero).str();
        }
        j["vanishing_variants"] = rep.vanishing;
        j["passed"] = rep.passed();
        *passed = rep.passed() ? 1 : 0;
        *out = dup(j.dump());
    });
}

ah_status ah_check_specializations(const ah_rootsys* rs, const char* b, long H, long order, char** out, int* passed) {
    if (!out || !passed) return fail(AH_E_ARG, "null argument");
    return guard([&] {
        auto p = params(rs, b, H);
        const ah::RootSystem& R = *p.rs;
        oj checks = oj::array();
        bool all = true;
        auto record = [&](const std::string& name, bool ok, const std::string& detail) {
            oj c{{"name", name}, {"passed", ok}};
            if (!detail.empty()) c["detail"] = detail;
            checks.push_back(c);
            all = all && ok;
        };

        ah::QSeries F = ah::blowup_F(R, p.b, order);
        ah::QSeries th = ah::theta_zero(R, p.b.d(), p.b.b.a, order);
        ah::QSeries F1 = ah::qeval_L(F, 1);
        record("blowup at L=1 equals theta_zero", F1 == th,
               F1 == th ? "" : "blowup " + ah::qseries_str(F1) + " vs theta " + ah::qseries_str(th));

        ah::LatticeSeries orb = ah::orbit_sum(p.rs, p.b.b, H);
        ah::LatticeSeries E = ah::eisenstein_E(p);
        ah::LatticeSeries E1 = ah::eval_L(E, 1);
        record("E at L=1 equals the orbit sum", ah::agree_on_common_window(E1, orb), diff_str(R, E1, orb));
        ah::LatticeSeries P1 = ah::eval_L(ah::hall_P(p, ah::HallForm::Closed), 1);
        record("hall_P at L=1 equals the orbit sum", ah::agree_on_common_window(P1, orb), diff_str(R, P1, orb));

        for (long q : {2L, 3L}) {
            bool ok = true;
            std::string detail;
            for (auto& [x, v] : ah::point_count(E, q))
                if (v < 0) {
                    ok = false;
                    detail = "E coefficient at " + x.str() + " is " + v.get_str();
                    break;
                }
            record("E non-negative at L=" + std::to_string(q), ok, detail);
            ok = true;
            detail.clear();
            for (auto& [n, v] : ah::qeval_L(F, q).c)
                if (v.coeff(0) < 0) {
                    ok = false;
                    detail = "blowup coefficient at q^" + std::to_string(n) + " is " + v.str();
                    break;
                }
            record("blowup non-negative at L=" + std::to_string(q), ok, detail);
        }
        *passed = all ? 1 : 0;
        *out = dup(oj{{"checks", checks}, {"passed", all}}.dump());
    });
}

ah_status ah_oracle(const char* kind, long q, long a, long b, char** out) {
    if (!kind || !out) return fail(AH_E_ARG, "null argument");
    return guard([&] {
        std::string k = kind;
        oj par{{"q", q}};
        std::uint64_t n = 0;
        if (k == "subsheaves") {
            n = ah::count_subsheaves(q, a);
            par["a1"] = a;
        } else if (k == "subbundles") {
            n = ah::count_subbundles(q, a);
            par["a1"] = a;
        } else if (k == "polar") {
            n = ah::count_polar_sections(q, a, b);
            par["m"] = a;
            par["n"] = b;
        } else if (k == "symmetric") {
            n = ah::count_symmetric_product(q, a);
            par["n"] = a;
        } else if (k == "flags") {
            n = ah::count_flags_rank3(q, a, b);
            par["k1"] = a;
            par["k2"] = b;
        } else {
            throw ah::Error(ah::Error::Malformed,
                            "unknown oracle kind '" + k + "' (subsheaves, subbundles, polar, symmetric, flags)");
        }
        *out = dup(oj{{"kind", k}, {"count", n}, {"parameters", par}}.dump());
    });
}

ah_status ah_rank2(const char* stream_json, long order, int genus, int sL, int sz, char** out, int* passed) {
    if (!out || !passed) return fail(AH_E_ARG, "null argument");
    if ((sL != 1 && sL != -1) || (sz != 1 && sz != -1)) return fail(AH_E_ARG, "signs must be +1 or -1");
    return guard([&] {
        ah::Rank2Series q = stream_json ? ah::rank2_from_json(stream_json) : ah::quot_series(order);
        ah::Rank2Report rep = ah::check_rank2(q, genus, {sL, sz});
        oj van = oj::array();
        for (auto& s : rep.vanishing) van.push_back(ah::rank2_sign_str(s));
        oj j;
        j["series"] = oj::parse(ah::rank2_to_json(q));
        j["sign"] = ah::rank2_sign_str({sL, sz});
        j["residual"] = rep.residual.is_zero() ? "0" : rep.residual.str();
        j["vanishing_signs"] = van;
        j["passed"] = rep.residual.is_zero();
        *passed = rep.residual.is_zero() ? 1 : 0;
        *out = dup(j.dump());
    });
}

ah_status ah_conventions_resolve(char** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    return guard([&] { *out = dup(ah::record_to_json(ah::resolve_conventions())); });
}

ah_status ah_conventions_hash(char** out) {
    if (!out) return fail(AH_E_ARG, "null out");
    return guard([&] { *out = dup(ah::convention_table_hash()); });
}

ah_status ah_conventions_load(const char* json, int* funceq_variant) {
    if (!json || !funceq_variant) return fail(AH_E_ARG, "null argument");
    return guard([&] {
        ah::ConventionRecord r = ah::record_from_json(json);
        ah::require_fresh(r);
        *funceq_variant = r.funceq_variant ? *r.funceq_variant : -1;
    });
}

}  // extern "C"
