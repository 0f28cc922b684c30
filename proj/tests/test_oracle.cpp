#include <doctest.h>

#include "affhall/eisenstein.hpp"
#include "affhall/oracle.hpp"
#include "affhall/rank2.hpp"

using namespace ah;

TEST_SUITE("oracle") {

TEST_CASE("documented counts") {
    CHECK(count_subsheaves(2, 0) == 3);
    CHECK(count_subsheaves(2, -1) == 15);
    CHECK(count_subsheaves(3, 0) == 4);
    CHECK(count_subbundles(2, 0) == 3);
    CHECK(count_subbundles(2, -1) == 6);
    CHECK(count_subbundles(3, -1) == 24);
    CHECK(count_polar_sections(2, 0, 0) == 2);
    CHECK(count_polar_sections(2, 0, 1) == 6);
    CHECK(count_polar_sections(2, 1, 0) == 4);
    CHECK(count_symmetric_product(2, 1) == 3);
    CHECK(count_symmetric_product(2, 2) == 7);
    CHECK(count_symmetric_product(3, 2) == 13);
    CHECK(count_flags_rank3(2, 0, 0) == 21);
}

TEST_CASE("coprimality of binary forms") {
    // x and y share no zero; x and x^2 + xy share [0:1]
    CHECK(forms_coprime({{0, 1}, {1, 0}}, 2));
    CHECK_FALSE(forms_coprime({{0, 1}, {0, 1, 1}}, 2));
    // x^2 + xy + y^2 is irreducible over F_2, so coprime to xy
    CHECK(forms_coprime({{1, 1, 1}, {0, 1, 0}}, 2));
    // two forms vanishing at infinity ([1:0]): no x^d term
    CHECK_FALSE(forms_coprime({{1, 0}, {1, 0}}, 3));
    CHECK_FALSE(forms_coprime({{0, 0}, {0, 0}}, 3));
}

TEST_CASE("counts agree with the closed forms") {
    auto Q = quot_series(3);
    auto E = subbundle_series_from_quot(Q, zeta_from_curve(CurveData::p1()));
    for (long q : {2L, 3L})
        for (long a1 = 0; a1 >= -2; --a1) {
            CHECK(Q.at(a1).eval_L(q) == mpq_class(count_subsheaves(q, a1)));
            CHECK(E.at(a1).eval_L(q) == mpq_class(count_subbundles(q, a1)));
        }
    RatFnU z = zeta_from_curve(CurveData::p1());
    for (long q : {2L, 3L, 5L})
        for (int n = 0; n <= 6; ++n)
            CHECK(symmetric_product_measure(z, n).eval_L(q) == mpq_class(count_symmetric_product(q, n)));
    for (long q : {2L, 3L})
        for (long m = 0; m <= 2; ++m) {
            auto ex = psi_line(m).expand(3);
            for (int n = 0; n <= 3; ++n) CHECK(ex[static_cast<size_t>(n)].eval_L(q) == mpq_class(count_polar_sections(q, m, n)));
        }
}

TEST_CASE("projective space counts") {
    // degree-n divisors on P^1 form P^n
    for (long q : {2L, 3L})
        for (long n = 0; n <= 5; ++n) {
            std::uint64_t want = 0, p = 1;
            for (long i = 0; i <= n; ++i, p *= static_cast<std::uint64_t>(q)) want += p;
            CHECK(count_symmetric_product(q, n) == want);
        }
}

TEST_CASE("flag counts are symmetric under duality") {
    for (long k1 = 0; k1 <= 2; ++k1)
        for (long k2 = 0; k1 + k2 <= 2; ++k2) CHECK(count_flags_rank3(2, k1, k2) == count_flags_rank3(2, k2, k1));
}

TEST_CASE("bounds and fields") {
    CHECK_THROWS_AS(check_field(4), Error);
    CHECK_THROWS_AS(check_field(7), Error);
    CHECK_NOTHROW(check_field(5));
    CHECK_THROWS_AS(count_subsheaves(2, 1), Error);
    CHECK_THROWS_AS(count_subbundles(2, 1), Error);
    CHECK_THROWS_AS(count_polar_sections(2, -1, 0), Error);
    CHECK_THROWS_AS(count_polar_sections(2, 0, 4), Error);
    CHECK_THROWS_AS(count_symmetric_product(2, 7), Error);
    CHECK_THROWS_AS(count_flags_rank3(2, -1, 0), Error);
    OracleLimits tiny;
    tiny.max_enumeration = 10;
    CHECK_THROWS_AS(count_subsheaves(3, -2, tiny), Error);
    OracleLimits low;
    low.max_degree = 1;
    CHECK_THROWS_AS(count_subsheaves(2, -2, low), Error);
}

}  // TEST_SUITE
