// affhall command-line front end; talks to the engine only through affhall.h
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "affhall.h"

namespace {

using oj = nlohmann::ordered_json;

struct Config {
    std::string command;
    std::string type = "A";
    int rank = 1;
    std::string b = "0;0;-1";
    long grade = 8;
    long order = 8;
    long d = 1;
    std::string f;
    std::string spec = "generic";
    std::string format = "json";
    std::string conventions;
    bool height_shift = false;
    bool full = false;
    bool numerator = false;
    std::string form = "closed";
    std::string twist;
    std::string w = "s0";
    int genus = 0;
    int variant = -1;
    std::string kind;
    long q = 2, a1 = 0, m = 0, n = 0, k1 = 0, k2 = 0;
};

// a call failed: message plus exit code
struct Failure {
    int code;
    std::string msg;
};

void check(ah_status st) {
    if (st != AH_OK) throw Failure{st == AH_E_ARG || st == AH_E_MALFORMED ? 2 : 3, ah_last_error()};
}

std::string take(char* s) {
    std::string r = s ? s : "";
    ah_string_free(s);
    return r;
}

struct Rs {
    ah_rootsys* p = nullptr;
    explicit Rs(const Config& c) {
        if (c.type.size() != 1) throw Failure{2, "--type must be a single letter"};
        check(ah_rootsys_new(c.type[0], c.rank, &p));
    }
    ~Rs() { ah_rootsys_free(p); }
    Rs(const Rs&) = delete;
    Rs& operator=(const Rs&) = delete;
};

struct Series {
    ah_series* p = nullptr;
    ~Series() { ah_series_free(p); }
    std::string render(ah_format f) const {
        char* s = nullptr;
        check(ah_series_render(p, f, &s));
        return take(s);
    }
};

std::string conventions_path(const Config& c) {
    if (!c.conventions.empty()) return c.conventions;
    if (const char* e = std::getenv("AFFHALL_CONVENTIONS"); e && *e) return e;
    return "affhall_conventions.json";
}

oj load_record(const Config& c) {
    std::string path = conventions_path(c);
    std::ifstream in(path);
    if (!in) throw Failure{4, "no convention record at " + path + "; run `affhall selftest` first (or pass --conventions)"};
    std::stringstream ss;
    ss << in.rdbuf();
    int v = -1;
    ah_status st = ah_conventions_load(ss.str().c_str(), &v);
    if (st == AH_E_STALE) throw Failure{4, std::string(ah_last_error()) + " (record " + path + ")"};
    check(st);
    return oj::parse(ss.str());
}

oj config_json(const Config& c) {
    oj j;
    j["command"] = c.command;
    j["version"] = ah_version();
    j["format"] = c.format;
    const std::string& k = c.command;
    if (k != "zeta" && k != "oracle" && k != "selftest") {
        j["type"] = c.type;
        j["rank"] = c.rank;
    }
    if (k == "eisenstein" || k == "hall" || k == "blowup" || k == "check-funceq" || k == "check-specializations")
        j["b"] = c.b;
    if (k == "eisenstein" || k == "hall" || k == "check-funceq" || k == "check-specializations" || (k == "theta" && c.full))
        j["grade"] = c.grade;
    if (k == "zeta" || k == "blowup" || k == "check-specializations" || (k == "theta" && !c.full)) j["order"] = c.order;
    if (k == "theta" || k == "classify-torsors") j["d"] = c.d;
    if (k == "theta") {
        j["f"] = c.f;
        j["full"] = c.full;
    }
    if (k == "zeta" || k == "blowup" || k == "eisenstein") j["spec"] = c.spec;
    if (k == "zeta" || k == "check-funceq") j["genus"] = c.genus;
    if (k == "eisenstein" || k == "check-funceq") j["height_shift"] = c.height_shift;
    if (k == "eisenstein") j["numerator"] = c.numerator;
    if (k == "hall") j["form"] = c.form;
    if (k == "check-funceq") j["w"] = c.w;
    if (k == "oracle") {
        j["kind"] = c.kind;
        j["q"] = c.q;
    }
    if (k == "check-funceq" || k == "selftest" || (k == "hall" && c.form == "definition"))
        j["conventions"] = conventions_path(c);
    return j;
}

ah_format fmt(const Config& c) { return c.format == "table" ? AH_FORMAT_TABLE : AH_FORMAT_JSON; }

// prints result (JSON text, or table text) with the config attached
void emit(const Config& c, const oj& cfg, const std::string& result, bool is_json) {
    if (c.format == "table") {
        std::cout << "# config " << cfg.dump() << "\n" << result;
        if (!result.empty() && result.back() != '\n') std::cout << "\n";
        return;
    }
    oj out;
    out["config"] = cfg;
    out["result"] = is_json ? oj::parse(result) : oj(result);
    std::cout << out.dump(2) << "\n";
}

int run(Config& c) {
    oj cfg = config_json(c);
    const std::string& k = c.command;
    char* s = nullptr;
    int ok = 0;
    // an existing record must match this build, whether or not the command reads it
    if (k != "selftest" && std::ifstream(conventions_path(c))) load_record(c);

    if (k == "zeta") {
        check(ah_zeta(c.genus, static_cast<int>(c.order), c.spec.c_str(), fmt(c), &s));
        emit(c, cfg, take(s), true);
        return 0;
    }
    if (k == "oracle") {
        long a = 0, b = 0;
        if (c.kind == "subsheaves" || c.kind == "subbundles") a = c.a1;
        else if (c.kind == "polar") a = c.m, b = c.n;
        else if (c.kind == "symmetric") a = c.n;
        else if (c.kind == "flags") a = c.k1, b = c.k2;
        check(ah_oracle(c.kind.c_str(), c.q, a, b, &s));
        oj r = oj::parse(take(s));
        if (c.format == "table") emit(c, cfg, c.kind + " q=" + std::to_string(c.q) + " : " + r["count"].dump(), false);
        else emit(c, cfg, r.dump(), true);
        return 0;
    }
    if (k == "selftest") {
        check(ah_conventions_resolve(&s));
        std::string rec = take(s);
        std::string path = conventions_path(c);
        std::ofstream o(path);
        if (!o) throw Failure{3, "cannot write convention record to " + path};
        o << rec << "\n";
        o.close();
        oj r = oj::parse(rec);
        bool resolved = !r["funceq"]["variant"].is_null() && !r["rank2"]["sign"].is_null();
        oj res{{"written", path}, {"resolved", resolved}, {"record", r}};
        if (c.format == "table") {
            std::ostringstream os;
            os << "record written to " << path << "\n";
            os << "funceq variant : " << r["funceq"]["variant_str"].dump() << " candidates " << r["funceq"]["candidates"].dump() << "\n";
            os << "rank2 sign     : " << r["rank2"]["sign"].dump() << "\n";
            os << "hall rule      : " << r["hall"]["rule"].dump() << "\n";
            os << "weyl-kac combo : " << r["weyl_kac"]["combo"].dump() << "\n";
            emit(c, cfg, os.str(), false);
        } else {
            emit(c, cfg, res.dump(), true);
        }
        return resolved ? 0 : 1;
    }

    Rs rs(c);
    if (k == "classify-torsors") {
        check(ah_torsor_labels(rs.p, c.d, &s));
        oj r = oj::parse(take(s));
        if (c.format == "table") {
            std::string t;
            for (auto& l : r["labels"]) t += l.get<std::string>() + "\n";
            emit(c, cfg, t, false);
        } else {
            emit(c, cfg, r.dump(), true);
        }
        return 0;
    }
    if (k == "theta") {
        if (c.full) {
            Series t;
            check(ah_theta_full(rs.p, c.d, c.grade, &t.p));
            emit(c, cfg, t.render(fmt(c)), c.format == "json");
        } else {
            check(ah_theta_zero(rs.p, c.d, c.f.c_str(), c.order, fmt(c), &s));
            emit(c, cfg, take(s), c.format == "json");
        }
        return 0;
    }
    if (k == "blowup") {
        check(ah_blowup(rs.p, c.b.c_str(), c.order, c.spec.c_str(), fmt(c), &s));
        emit(c, cfg, take(s), c.format == "json");
        return 0;
    }
    if (k == "eisenstein") {
        Series e;
        if (c.numerator) check(ah_numerator(rs.p, c.b.c_str(), c.grade, c.height_shift, &e.p));
        else check(ah_eisenstein(rs.p, c.b.c_str(), c.grade, c.height_shift, &e.p));
        if (c.spec != "generic" && c.format == "json") {
            check(ah_series_specialize(e.p, c.spec.c_str(), &s));
            emit(c, cfg, take(s), true);
        } else {
            emit(c, cfg, e.render(fmt(c)), c.format == "json");
        }
        return 0;
    }
    if (k == "hall") {
        ah_twist rule = AH_TWIST_LITERAL;
        if (c.form == "definition") {
            oj rec = load_record(c);
            std::string r = !c.twist.empty() ? c.twist
                            : rec["hall"]["rule"].is_null() ? "literal"
                                                            : rec["hall"]["rule"].get<std::string>();
            cfg["twist"] = r;
            cfg["twist_resolved"] = !rec["hall"]["rule"].is_null();
            rule = r == "opposite" ? AH_TWIST_OPPOSITE : r == "untwisted" ? AH_TWIST_UNTWISTED : AH_TWIST_LITERAL;
        }
        Series h;
        check(ah_hall(rs.p, c.b.c_str(), c.grade, c.form == "closed", rule, &h.p));
        emit(c, cfg, h.render(fmt(c)), c.format == "json");
        return 0;
    }
    if (k == "check-funceq") {
        int v = c.variant;
        if (v < 0) {
            oj rec = load_record(c);
            if (rec["funceq"]["variant"].is_null()) throw Failure{4, "convention record has no resolved variant"};
            v = rec["funceq"]["variant"].get<int>();
        }
        cfg["variant"] = v;
        check(ah_check_funceq(rs.p, c.b.c_str(), c.grade, c.w.c_str(), v, c.genus, c.height_shift, &s, &ok));
        oj r = oj::parse(take(s));
        if (c.format == "table") {
            std::ostringstream os;
            os << "w " << r["w"].get<std::string>() << " variant " << r["variant_str"].get<std::string>() << "\n";
            os << "checked monomials : " << r["checked_monomials"] << "\n";
            os << "residual : " << (ok ? std::string("0") : std::to_string(r["residual_terms"].get<long>()) + " nonzero terms") << "\n";
            if (!ok) os << "first nonzero : " << r["first_nonzero"].get<std::string>() << " -> " << r["first_nonzero_coeff"].get<std::string>() << "\n";
            os << "vanishing variants : " << r["vanishing_variants"].dump() << "\n";
            emit(c, cfg, os.str(), false);
        } else {
            emit(c, cfg, r.dump(), true);
        }
        if (!ok) std::cerr << "check-funceq FAILED at " << r["first_nonzero"].get<std::string>() << "\n";
        return ok ? 0 : 1;
    }
    if (k == "check-specializations") {
        check(ah_check_specializations(rs.p, c.b.c_str(), c.grade, c.order, &s, &ok));
        oj r = oj::parse(take(s));
        if (c.format == "table") {
            std::ostringstream os;
            for (auto& x : r["checks"]) {
                os << (x["passed"].get<bool>() ? "PASS " : "FAIL ") << x["name"].get<std::string>();
                if (x.contains("detail")) os << " : " << x["detail"].get<std::string>();
                os << "\n";
            }
            emit(c, cfg, os.str(), false);
        } else {
            emit(c, cfg, r.dump(), true);
        }
        if (!ok)
            for (auto& x : r["checks"])
                if (!x["passed"].get<bool>()) std::cerr << "FAILED " << x["name"].get<std::string>() << "\n";
        return ok ? 0 : 1;
    }
    throw Failure{2, "unknown command " + k};
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"affhall: exact generating functions for affine Hall polynomials, Eisenstein series and blowup functions"};
    app.require_subcommand(1);
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--conventions", c.conventions, "convention record path (default $AFFHALL_CONVENTIONS or ./affhall_conventions.json)");

    auto rs_opts = [&](CLI::App* s) {
        s->add_option("--type", c.type, "root system type A-G")->capture_default_str();
        s->add_option("--rank", c.rank, "rank")->capture_default_str();
    };
    auto b_opt = [&](CLI::App* s) { s->add_option("--b", c.b, "torsor label \"f1,..,fr;m;-d\"")->capture_default_str(); };
    auto grade_opt = [&](CLI::App* s) { s->add_option("--grade", c.grade, "grade cutoff")->capture_default_str(); };
    auto order_opt = [&](CLI::App* s) { s->add_option("--order", c.order, "q-order cutoff")->capture_default_str(); };
    auto spec_opt = [&](CLI::App* s) {
        s->add_option("--spec", c.spec, "generic | serre | euler | point_count:<q>")->capture_default_str();
    };

    auto* zeta = app.add_subcommand("zeta", "motivic zeta function of the Serre model (1 - s u)^(2g)");
    zeta->add_option("--genus", c.genus)->capture_default_str();
    order_opt(zeta);
    spec_opt(zeta);

    auto* theta = app.add_subcommand("theta", "theta-zero-value (q-order) or full theta function (--full, grade)");
    rs_opts(theta);
    theta->add_option("--d", c.d, "level d > 0")->capture_default_str();
    theta->add_option("--f", c.f, "finite part, comma separated");
    theta->add_flag("--full", c.full);
    order_opt(theta);
    grade_opt(theta);

    auto* eis = app.add_subcommand("eisenstein", "Eisenstein series E (or numerator N = E D with --numerator)");
    rs_opts(eis);
    b_opt(eis);
    grade_opt(eis);
    spec_opt(eis);
    eis->add_flag("--height-shift", c.height_shift, "evaluate psi at L^(grade-1) t^a");
    eis->add_flag("--numerator", c.numerator);

    auto* hall = app.add_subcommand("hall", "affine Hall polynomial P_b");
    rs_opts(hall);
    b_opt(hall);
    grade_opt(hall);
    hall->add_option("--form", c.form)->check(CLI::IsMember({"closed", "definition"}))->capture_default_str();
    hall->add_option("--twist", c.twist, "override the twisted-action rule")->check(CLI::IsMember({"literal", "opposite", "untwisted"}));

    auto* blow = app.add_subcommand("blowup", "universal blowup function F_b");
    rs_opts(blow);
    b_opt(blow);
    order_opt(blow);
    spec_opt(blow);

    auto* tors = app.add_subcommand("classify-torsors", "antidominant torsor labels of level d");
    rs_opts(tors);
    tors->add_option("--d", c.d)->capture_default_str();

    auto* fe = app.add_subcommand("check-funceq", "functional equation of N = E D under one Weyl element");
    rs_opts(fe);
    b_opt(fe);
    grade_opt(fe);
    fe->add_option("--w", c.w, "e, s0, s1s0, t:1,0, t:1*s1")->capture_default_str();
    fe->add_option("--genus", c.genus)->capture_default_str();
    fe->add_option("--variant", c.variant, "override the recorded convention variant (0-31)");
    fe->add_flag("--height-shift", c.height_shift);

    auto* sp = app.add_subcommand("check-specializations", "L=1 and point-count checks");
    rs_opts(sp);
    b_opt(sp);
    grade_opt(sp);
    order_opt(sp);

    auto* orc = app.add_subcommand("oracle", "brute-force counts over F_q");
    orc->add_option("kind", c.kind, "subsheaves | subbundles | polar | symmetric | flags")->required();
    orc->add_option("--q", c.q)->capture_default_str();
    orc->add_option("--a1", c.a1);
    orc->add_option("--m", c.m);
    orc->add_option("--n", c.n);
    orc->add_option("--k1", c.k1);
    orc->add_option("--k2", c.k2);

    app.add_subcommand("selftest", "resolve conventions and write the convention record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }
    c.command = app.get_subcommands().front()->get_name();
    try {
        return run(c);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.msg << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
