#include <doctest.h>

#include <nlohmann/json.hpp>
#include <string>

#include "affhall.h"

namespace {

// takes ownership of a library string
std::string take(char* s) {
    std::string r = s ? s : "";
    ah_string_free(s);
    return r;
}

struct Rs {
    ah_rootsys* p = nullptr;
    Rs(char t, int r) { REQUIRE(ah_rootsys_new(t, r, &p) == AH_OK); }
    ~Rs() { ah_rootsys_free(p); }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and root systems") {
    CHECK(std::string(ah_version()).size() > 0);
    ah_rootsys* rs = nullptr;
    CHECK(ah_rootsys_new('X', 2, &rs) == AH_E_DOMAIN);
    CHECK(rs == nullptr);
    CHECK(std::string(ah_last_error()).size() > 0);
    CHECK(ah_rootsys_new('A', 1, nullptr) == AH_E_ARG);
    Rs a1('A', 1);
    char* out = nullptr;
    REQUIRE(ah_rootsys_json(a1.p, &out) == AH_OK);
    auto j = nlohmann::json::parse(take(out));
    CHECK(j.contains("cartan"));
    REQUIRE(ah_torsor_labels(a1.p, 2, &out) == AH_OK);
    std::string labels = take(out);
    CHECK(labels.find("0;0;-2") != std::string::npos);
    CHECK(labels.find("-1;0;-2") != std::string::npos);
    CHECK(ah_torsor_labels(a1.p, 0, &out) == AH_E_DOMAIN);
}

TEST_CASE("series handles") {
    Rs a1('A', 1);
    ah_series* E = nullptr;
    REQUIRE(ah_eisenstein(a1.p, "0;0;-1", 6, 0, &E) == AH_OK);
    size_t n = 0;
    REQUIRE(ah_series_size(E, &n) == AH_OK);
    CHECK(n > 0);
    char* out = nullptr;
    REQUIRE(ah_series_render(E, AH_FORMAT_JSON, &out) == AH_OK);
    std::string js = take(out);
    ah_series* back = nullptr;
    REQUIRE(ah_series_parse(a1.p, js.c_str(), &back) == AH_OK);
    int eq = 0;
    REQUIRE(ah_series_equal(E, back, &eq) == AH_OK);
    CHECK(eq == 1);
    REQUIRE(ah_series_render(E, AH_FORMAT_TABLE, &out) == AH_OK);
    CHECK(take(out).find("q^0:") != std::string::npos);
    REQUIRE(ah_series_specialize(E, "point_count:2", &out) == AH_OK);
    CHECK(take(out).find("\"3\"") != std::string::npos);
    CHECK(ah_series_specialize(E, "bogus", &out) == AH_E_MALFORMED);
    ah_series_free(back);
    ah_series_free(E);
    CHECK(ah_series_parse(a1.p, "{", &back) == AH_E_MALFORMED);
    CHECK(ah_eisenstein(a1.p, "1;0;-1", 6, 0, &E) == AH_E_DOMAIN);
    CHECK(ah_eisenstein(a1.p, "0;0;-1", -3, 0, &E) == AH_E_WINDOW);
    CHECK(ah_eisenstein(a1.p, nullptr, 6, 0, &E) == AH_E_ARG);
}

TEST_CASE("hall forms and specializations") {
    Rs a1('A', 1);
    ah_series *E = nullptr, *P = nullptr;
    REQUIRE(ah_hall(a1.p, "0;0;-1", 6, 1, AH_TWIST_LITERAL, &P) == AH_OK);
    REQUIRE(ah_eisenstein(a1.p, "0;0;-1", 6, 0, &E) == AH_OK);
    int eq = 1;
    REQUIRE(ah_series_equal(E, P, &eq) == AH_OK);
    CHECK(eq == 0);
    ah_series_free(E);
    ah_series_free(P);
    char* out = nullptr;
    int passed = 0;
    REQUIRE(ah_check_specializations(a1.p, "0;0;-1", 6, 6, &out, &passed) == AH_OK);
    auto j = nlohmann::json::parse(take(out));
    CHECK(passed == 1);
    CHECK(j["passed"].get<bool>());
}

TEST_CASE("q-series outputs") {
    Rs a1('A', 1);
    char* out = nullptr;
    REQUIRE(ah_blowup(a1.p, "0;0;-1", 3, "point_count:2", AH_FORMAT_JSON, &out) == AH_OK);
    std::string s = take(out);
    for (const char* v : {"\"1\"", "\"8\"", "\"24\"", "\"120\""}) CHECK(s.find(v) != std::string::npos);
    REQUIRE(ah_theta_zero(a1.p, 1, "0", 9, AH_FORMAT_JSON, &out) == AH_OK);
    CHECK(take(out).size() > 0);
    CHECK(ah_theta_zero(a1.p, 1, "x", 9, AH_FORMAT_JSON, &out) == AH_E_MALFORMED);
    REQUIRE(ah_zeta(1, 4, "generic", AH_FORMAT_JSON, &out) == AH_OK);
    CHECK(take(out).size() > 0);
}

TEST_CASE("oracle and rank-2 entry points") {
    char* out = nullptr;
    REQUIRE(ah_oracle("subbundles", 3, -1, 0, &out) == AH_OK);
    auto j = nlohmann::json::parse(take(out));
    CHECK(j["count"].get<long>() == 24);
    REQUIRE(ah_oracle("symmetric", 3, 2, 0, &out) == AH_OK);
    CHECK(nlohmann::json::parse(take(out))["count"].get<long>() == 13);
    CHECK(ah_oracle("nothing", 2, 0, 0, &out) == AH_E_MALFORMED);
    CHECK(ah_oracle("subsheaves", 7, 0, 0, &out) == AH_E_BOUNDS);
    int passed = 0;
    REQUIRE(ah_rank2(nullptr, 10, 0, -1, 1, &out, &passed) == AH_OK);
    CHECK(passed == 1);
    take(out);
    REQUIRE(ah_rank2(nullptr, 10, 0, 1, 1, &out, &passed) == AH_OK);
    CHECK(passed == 0);
    take(out);
}

TEST_CASE("functional-equation checker") {
    Rs a1('A', 1);
    char* out = nullptr;
    int passed = 0;
    REQUIRE(ah_check_funceq(a1.p, "0;0;-1", 6, "e", 15, 0, 0, &out, &passed) == AH_OK);
    CHECK(passed == 1);
    auto j = nlohmann::json::parse(take(out));
    CHECK(j["vanishing_variants"].size() == 32);
    CHECK(ah_check_funceq(a1.p, "0;0;-1", 6, "s9", 15, 0, 0, &out, &passed) == AH_E_MALFORMED);
}

TEST_CASE("convention records") {
    char* out = nullptr;
    REQUIRE(ah_conventions_resolve(&out) == AH_OK);
    std::string rec = take(out);
    int v = -1;
    REQUIRE(ah_conventions_load(rec.c_str(), &v) == AH_OK);
    CHECK(v == 15);
    REQUIRE(ah_conventions_hash(&out) == AH_OK);
    std::string h = take(out);
    auto j = nlohmann::json::parse(rec);
    CHECK(j["table_hash"].get<std::string>() == h);
    j["table_hash"] = "ffffffffffffffff";
    CHECK(ah_conventions_load(j.dump().c_str(), &v) == AH_E_STALE);
    CHECK(ah_conventions_load("[]", &v) == AH_E_MALFORMED);
}

}  // TEST_SUITE
