#include <doctest.h>

#include <algorithm>

#include "affhall/series.hpp"
#include "support.hpp"

using namespace ah;

TEST_SUITE("series") {

TEST_CASE("monomials and identity") {
    auto rs = RootSystem::build('A', 2);
    AffCoweight x{{1, 0}, 0, -1}, y{{0, 1}, 1, 0};
    auto a = LatticeSeries::monomial(rs, x, Lp(1), 10);
    auto b = LatticeSeries::monomial(rs, y, MotCoeff(3), 10);
    auto p = mul(a, b);
    REQUIRE(p.size() == 1);
    CHECK(p.coeff(x + y) == Lp(1, 3));
    gen::Rng r(41);
    auto s = gen::series(r, rs, 0, 6, 30);
    CHECK(mul(s, LatticeSeries::one(rs, 6)) == s);
}

TEST_CASE("geometric expansion") {
    auto rs = RootSystem::build('A', 1);
    AffCoweight a0{{-1}, 1, 0};
    auto e = expand_unit_inverse(rs, MotCoeff(1), a0, 2);
    CHECK(e.size() == 3);
    CHECK(e.coeff({{0}, 0, 0}).is_one());
    CHECK(e.coeff({{-1}, 1, 0}).is_one());
    CHECK(e.coeff({{-2}, 2, 0}).is_one());
    CHECK(expand_unit_inverse(rs, MotCoeff(), a0, 5) == LatticeSeries::one(rs, 5));
    AffCoweight mu{{1}, 0, 0};
    auto g = expand_unit_inverse(rs, Lp(2), mu, 3);
    for (int k = 0; k <= 3; ++k) CHECK(g.coeff(mu.times(k)) == Lp(2 * k));
    CHECK(g.size() == 4);
    CHECK_THROWS_WITH_AS(expand_unit_inverse(rs, MotCoeff(1), AffCoweight{{0}, 0, 1}, 3),
                         doctest::Contains("non-expandable direction"), Error);
    CHECK_THROWS_AS(expand_unit_inverse(rs, MotCoeff(1), AffCoweight{{-1}, 0, 0}, 3), Error);
    // (1 - t^mu) times its inverse telescopes to 1
    for (long H : {1L, 4L, 9L})
        for (const AffCoweight& m : {mu, a0, AffCoweight{{1}, 1, 0}}) {
            auto one_minus = LatticeSeries::one(rs, H) - LatticeSeries::monomial(rs, m, MotCoeff(1), H);
            CHECK(mul(one_minus, expand_unit_inverse(rs, MotCoeff(1), m, H)) == LatticeSeries::one(rs, H));
        }
}

TEST_CASE("window bookkeeping") {
    auto rs = RootSystem::build('A', 1);
    LatticeSeries s(rs, 0, 4);
    CHECK_THROWS_AS(s.add_term({{-1}, 0, 0}, MotCoeff(1)), Error);
    s.add_term({{5}, 0, 0}, MotCoeff(1));  // above H: dropped
    CHECK(s.empty());
    s.add_term({{1}, 0, 0}, MotCoeff(2));
    s.add_term({{1}, 0, 0}, MotCoeff(-2));
    CHECK(s.empty());
    LatticeSeries a(rs, 1, 6), b(rs, 2, 5);
    auto p = mul(a, b);
    CHECK(p.gmin() == 3);
    CHECK(p.H() == std::min(6 + 2, 5 + 1));
}

TEST_CASE("commutativity, associativity, truncation coherence") {
    gen::Rng r(42);
    for (char t : {'A', 'B'}) {
        auto rs = RootSystem::build(t, 2);
        for (int i = 0; i < 40; ++i) {
            auto a = gen::series(r, rs, 0, 7, 12, 0);
            auto b = gen::series(r, rs, 0, 7, 12, 0);
            auto c = gen::series(r, rs, 0, 7, 12, 0);
            CHECK(mul(a, b) == mul(b, a));
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
            CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
            long Hp = r.range(0, 6);
            CHECK(mul(a, b).truncate(Hp) == mul(a.truncate(Hp), b.truncate(Hp)));
            LatticeSeries ab = mul(a, b);
            for (auto& [x, v] : ab.terms()) {
                long g = grade(*rs, x);
                CHECK(g >= ab.gmin());
                CHECK(g <= ab.H());
            }
        }
    }
}

TEST_CASE("sum is independent of order") {
    gen::Rng r(43);
    auto rs = RootSystem::build('A', 2);
    std::vector<LatticeSeries> parts;
    for (int i = 0; i < 30; ++i) parts.push_back(gen::series(r, rs, 0, 6, 8));
    auto s1 = sum_all(rs, 0, 6, parts);
    std::reverse(parts.begin(), parts.end());
    auto s2 = sum_all(rs, 0, 6, parts);
    std::shuffle(parts.begin(), parts.end(), r.eng);
    auto s3 = sum_all(rs, 0, 6, parts);
    CHECK(s1 == s2);
    CHECK(s1 == s3);
    CHECK(series_to_json(s1) == series_to_json(s3));
}

TEST_CASE("weyl twist substitution") {
    gen::Rng r(44);
    for (char t : {'A', 'C'}) {
        auto rs = RootSystem::build(t, 2);
        const RootSystem& R = *rs;
        AffWeight zero{{0, 0}, 0, 0};
        auto s = gen::series(r, rs, 0, 6, 15);
        CHECK(weyl_twist_substitute(s, weyl_identity(R), zero).terms() == s.terms());
        for (int i = 0; i < 40; ++i) {
            AffWeylElt w1 = gen::weyl_word(r, R, 4), w2 = gen::weyl_word(r, R, 4);
            AffWeight n1 = gen::weight(r, R, 3), n2 = gen::weight(r, R, 3);
            auto f = gen::series(r, rs, 0, 5, 10);
            // t -> L^n2 w2(t), then t -> L^n1 w1(t): the composite is (w2 w1, n2 + w2(n1))
            auto lhs = weyl_twist_substitute(weyl_twist_substitute(f, w2, n2), w1, n1);
            auto rhs = weyl_twist_substitute(f, compose(R, w2, w1), n2 + act_weight(R, w2, n1));
            CHECK(lhs.terms() == rhs.terms());
            // single monomial, nu = rho^ - w(rho^)
            AffCoweight mu = gen::coweight(r, R, 2);
            AffWeight nu = rho_hat(R) - act_weight(R, w1, rho_hat(R));
            LatticeSeries m(rs, -100, 100);
            m.add_term(mu, MotCoeff(1));
            auto img = weyl_twist_substitute(m, w1, nu);
            REQUIRE(img.size() == 1);
            CHECK(img.terms().begin()->first == twist_exponent(R, w1, mu));
            CHECK(img.terms().begin()->second == MotCoeff::s_pow(static_cast<int>(2 * pair(nu, mu))));
        }
    }
}

TEST_CASE("q layers partition a series") {
    gen::Rng r(45);
    auto rs = RootSystem::build('A', 1);
    auto f = gen::series(r, rs, 0, 8, 40);
    LatticeSeries acc(rs, f.gmin(), f.H());
    for (long c = -2; c <= 6; ++c) {
        auto l = q_layer(f, c);
        for (auto& [x, v] : l.terms()) CHECK(x.c == c);
        acc += l;
    }
    CHECK(acc == f);
    CHECK(q_layer(LatticeSeries::one(rs, 3), 0) == LatticeSeries::one(rs, 3));
    auto mono = LatticeSeries::monomial(rs, {{0}, 1, -1}, MotCoeff(1), 5);
    CHECK(q_layer(mono, 1).size() == 1);
    CHECK(q_layer(mono, 0).empty());
}

TEST_CASE("json round trip and table") {
    gen::Rng r(46);
    for (char t : {'A', 'G'}) {
        auto rs = RootSystem::build(t, t == 'A' ? 1 : 2);
        for (int i = 0; i < 20; ++i) {
            auto f = gen::series(r, rs, 0, 6, 20);
            std::string js = series_to_json(f);
            CHECK(series_from_json(rs, js) == f);
            CHECK(series_to_json(series_from_json(rs, js)) == js);
        }
    }
    auto rs = RootSystem::build('A', 1);
    CHECK_THROWS_AS(series_from_json(rs, "{\"window\":{}}"), Error);
    CHECK_THROWS_AS(series_from_json(rs, "not json"), Error);
    CHECK_THROWS_AS(coeff_from_json("{\"x\":\"1\"}"), Error);
    std::string tab = series_table(LatticeSeries::monomial(rs, {{1}, 0, -1}, Lp(1), 3));
    CHECK(tab.find("q^0:") != std::string::npos);
    CHECK(tab.find("L") != std::string::npos);
}

TEST_CASE("first difference and L specialization") {
    auto rs = RootSystem::build('A', 1);
    auto a = LatticeSeries::monomial(rs, {{1}, 0, -1}, Lp(1), 4);
    auto b = LatticeSeries::monomial(rs, {{1}, 0, -1}, Lp(2), 4);
    auto d = first_difference(a, b);
    REQUIRE(d.has_value());
    CHECK(d->lhs == Lp(1));
    CHECK_FALSE(first_difference(a, a).has_value());
    CHECK(eval_L(b, 3).coeff({{1}, 0, -1}) == MotCoeff(9));
    CHECK(point_count(b, 2).at({{1}, 0, -1}) == 4);
}

TEST_CASE("v-homogeneity") {
    auto rs = RootSystem::build('A', 1);
    gen::Rng r(47);
    auto f = gen::series(r, rs, 0, 5, 10, -2);
    CHECK(f.v_homogeneous(-2));
    f.add_term({{0}, 0, -1}, MotCoeff(1));
    CHECK_FALSE(f.v_homogeneous(-2));
}

}  // TEST_SUITE
