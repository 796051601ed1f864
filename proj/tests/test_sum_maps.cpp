#include "doctest.h"

#include <random>
#include <set>

#include "common.hpp"
#include "hitcalc/sum_maps.hpp"

using namespace hitcalc;
using namespace testing_support;

TEST_SUITE("sum-maps") {

TEST_CASE("enumerate_pairs")
{
    const auto p3 = enumerate_pairs(3);
    // l = 1: {}, {2}, {3}, {2,3}; l = 2: {}, {3}; l = 3: {}.
    CHECK(p3.size() == 7);
    for (const auto& p : p3) CHECK(p.valid_for(3));
    CHECK(enumerate_pairs(5, 1).size() == 26);
    CHECK_FALSE(PairLL{2, {2}}.valid_for(3));
    CHECK_FALSE(PairLL{1, {3, 2}}.valid_for(3));
    CHECK_FALSE(PairLL{1, {2, 3, 4}}.valid_for(3));
}

TEST_CASE("q_map")
{
    CHECK(q_map(1, 4, parse_monomial("x1^12 x2^6 x3^9", 3)) == parse_monomial("x2^12 x3^6 x4^9", 4));
    CHECK(q_map(3, 3, parse_monomial("x1^2 x2", 2)) == parse_monomial("x1^2 x2", 3));
    CHECK_THROWS_AS(q_map(0, 3, parse_monomial("x1", 2)), std::out_of_range);
    CHECK_THROWS_AS(q_map(1, 4, parse_monomial("x1", 2)), std::out_of_range);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 500; ++k) {
        const int t = 2 + static_cast<int>(rng() % 5);
        const auto x = random_monomial(rng, t - 1, static_cast<int>(rng() % 50));
        const int l = 1 + static_cast<int>(rng() % t);
        const auto y = q_map(l, t, x);
        CHECK(weight_vector(y) == weight_vector(x));
        CHECK(y[l - 1] == 0);
    }
}

TEST_CASE("x_LU")
{
    CHECK(x_LU({2, 3, 4}, 1, 3, 4) == parse_monomial("x2^4 x3^2 x4", 4));
    CHECK(x_LU({}, 1, 0, 4) == Monomial(4));
    CHECK(x_LU({2, 3}, 2, 2, 3) == parse_monomial("x3^3", 3));
    CHECK_THROWS_AS(x_LU({2, 3}, 3, 2, 3), std::invalid_argument);
}

TEST_CASE("psi")
{
    const auto x = parse_monomial("x1^12 x2^6 x3^9", 3);
    const auto y = psi(1, {2, 3, 4}, x);
    REQUIRE(y.has_value());
    CHECK(*y == parse_monomial("x1^7 x2^8 x3^4 x4^8", 4));
    CHECK(y->degree() == 27);
    CHECK(weight_vector(*y) == WeightVector{1, 1, 2, 2});
    CHECK(weight_vector(x) == WeightVector{1, 1, 2, 2});
    for (int l = 1; l <= 4; ++l) CHECK(*psi(l, {}, x) == q_map(l, 4, x));
    CHECK_THROWS_AS(psi(2, {1}, x), std::invalid_argument);
}

TEST_CASE("psi does not commute with Sq^2")
{
    const auto x = parse_monomial("x1^12 x2^6 x3^9", 3);
    const Polynomial lhs = sq(2, *psi(1, {2, 3, 4}, x));
    CHECK(lhs == Polynomial(parse_monomial("x1^9 x2^8 x3^4 x4^8", 4)));
    Polynomial rhs(4, 29);
    const Polynomial sq2x = sq(2, x);
    for (const auto& m : sq2x.terms())
        if (auto z = psi(1, {2, 3, 4}, m)) rhs += Polynomial(*z);
    CHECK_FALSE(lhs == rhs);
}

TEST_CASE("psi preserves weight and degree; u is unique")
{
    std::mt19937_64 rng(12);
    int nonzero = 0;
    for (int k = 0; k < 10000; ++k) {
        const int t = 2 + static_cast<int>(rng() % 4);
        const auto pairs = enumerate_pairs(t, 1);
        const auto& p = pairs[rng() % pairs.size()];
        // Bias towards inputs satisfying the conditions: exponents near 2^r.
        Monomial x(t - 1);
        for (int j = 0; j < t - 1; ++j) x.set(j, static_cast<int>(rng() % (1 << (p.r() + 2))));
        const auto out = psi_detail(p.l, p.L, x);
        CHECK(out.matching_u <= 1);
        if (!out.image) continue;
        ++nonzero;
        CHECK(out.image->degree() == x.degree());
        CHECK(weight_vector(*out.image) == weight_vector(x));
        CHECK(out.image->arity() == t);
    }
    CHECK(nonzero > 300);
}

TEST_CASE("phi sets")
{
    CHECK(phi_zero({}, 4).empty());
    CHECK(phi_positive({}, 4).empty());
    Engine e;
    const auto c3 = e.admissible_basis(3, 9).admissibles;
    CHECK(phi_zero(c3, 4).size() <= 4 * c3.size());
    for (const auto& y : phi_positive(c3, 4)) CHECK_FALSE(y.has_zero_exponent());
}

TEST_CASE("phi_zero reproduces the zero part")
{
    Engine e;
    auto check = [&](int t, int n) {
        INFO("t=" << t << " n=" << n);
        const auto zero = split_parts(e.admissible_basis(t, n)).first;
        CHECK(phi_zero(e.admissible_basis(t - 1, n).admissibles, t) == zero.admissibles);
    };
    for (int n = 0; n <= 12; ++n) check(3, n);
    check(4, 19);
    check(5, 42);
    CHECK(phi_zero(e.admissible_basis(4, 42).admissibles, 5).size() == 700);
}

TEST_CASE("phi_positive images of (P_4)_42 admissibles are admissible")
{
    Engine e;
    const auto upper = e.admissible_basis(5, 42);
    const auto lower = e.admissible_basis(4, 42).admissibles;
    for (const auto& y : phi_positive(lower, 5)) CHECK(upper.contains(y));
    for (const auto& x : lower)
        for (const auto& p : enumerate_pairs(5, 1))
            if (auto y = psi(p.l, p.L, x)) CHECK(weight_vector(*y) == weight_vector(x));
}

TEST_CASE("lifted spikes x_l^{2^d - 1} q(x) are admissible")
{
    Engine e;
    auto check = [&](int t, int n) {
        for (int rho : u_set_variant(t, n, RhoVariant::PositiveOnly)) {
            const int s = (1 << rho) - 1;
            const auto upper = e.admissible_basis(t, n);
            for (const auto& x : e.positive_part(t - 1, n - s).admissibles)
                for (int l = 1; l <= t; ++l) {
                    Monomial y = q_map(l, t, x);
                    y.set(l - 1, s);
                    INFO(to_string(y));
                    CHECK(upper.contains(y));
                }
        }
    };
    for (int t = 2; t <= 4; ++t)
        for (int n = 1; n <= 20; ++n) check(t, n);
    check(5, 42);
}

TEST_CASE("mothebe_uys_sets")
{
    Engine e;
    const auto c = mothebe_uys_sets(e, 5, 42);
    CHECK(c.size() == 1030);
    const auto upper = e.admissible_basis(5, 42);
    for (const auto& y : c) CHECK(upper.contains(y));
    for (int n = 1; n <= 20; ++n)
        if (u_set_variant(3, n, RhoVariant::PositiveOnly).empty()) CHECK(mothebe_uys_sets(e, 3, n).empty());
}

TEST_CASE("efc_partition at (5, 42)")
{
    Engine e;
    const auto p = efc_partition(e, 5, 42);
    CHECK(p.omega == WeightVector{4, 3, 2, 1, 1});
    CHECK(p.block.size() == 1820);
    CHECK(p.E.size() == 542);
    CHECK(p.F.size() == 248);
    CHECK(p.C.size() == 1030);
    CHECK(p.E.size() + p.F.size() + p.C.size() == 1820);
    CHECK(p.disjoint_cover());
    CHECK(p.violations.empty());
    CHECK_THROWS_AS(efc_partition(e, 1, 2), std::invalid_argument);
}

TEST_CASE("gtS")
{
    Engine e;
    const auto v = conjecture_gtS_check(e, 5, 42);
    CHECK(v.holds);
    CHECK(v.violations.empty());
    CHECK(v.checked > 0);
    REQUIRE(oracle::mu(5) > 2);
    const auto vac = conjecture_gtS_check(e, 3, 5);  // (QP_2)_5 = 0
    CHECK(vac.holds);
    CHECK(vac.checked == 0);
    for (int n = 1; n <= 12; ++n) {
        const auto r = conjecture_gtS_check(e, 3, n);
        MESSAGE("gtS(3, " << n << "): " << r.status() << ", " << r.violations.size() << " violations");
    }
    const auto j = to_json(v);
    for (const char* key : {"conjecture", "t", "n", "omega", "holds", "violations", "variant"}) CHECK(j.contains(key));
    CHECK(j["conjecture"] == "gtS");
}

TEST_CASE("gtP")
{
    Engine e;
    const WeightVector w1{4, 3, 2, 1, 1};
    for (auto var : {RhoVariant::PositiveOnly, RhoVariant::IncludeZero}) {
        const auto v = conjecture_gtP_check(e, 5, 42, w1, var);
        // The equality side misses exactly F.
        CHECK(v.missing == efc_partition(e, 5, 42).F);
        CHECK(v.extra.empty());
        MESSAGE("gtP(5, 42, (4,3,2,1,1), " << to_string(var) << "): " << v.status());
        const auto j = to_json(v);
        CHECK(j["variant"] == to_string(var));
        CHECK(j["conjecture"] == "gtP");
    }
    // A weight vector with no monomials on either side.
    const auto empty = conjecture_gtP_check(e, 4, 19, WeightVector{1, 1, 0, 2}, RhoVariant::PositiveOnly);
    CHECK(empty.holds);
    CHECK(empty.checked == 0);
    for (const auto& w : occurring_weights(4, 19)) {
        const auto v = conjecture_gtP_check(e, 4, 19, w, RhoVariant::PositiveOnly);
        if (v.status() != "holds" || v.checked)
            MESSAGE("gtP(4, 19, " << to_string(w) << "): " << v.status() << " missing " << v.missing.size());
    }
}

TEST_CASE("u_set variants and C(t, n)")
{
    CHECK(u_set_variant(5, 42, RhoVariant::PositiveOnly) == std::vector<int>{1, 2, 3, 5});
    CHECK(u_set_variant(5, 42, RhoVariant::IncludeZero) == std::vector<int>{0, 1, 2, 3, 5});
    Engine e;
    const auto c0 = c_set(e, 5, 42, RhoVariant::IncludeZero);
    const auto c1 = c_set(e, 5, 42, RhoVariant::PositiveOnly);
    CHECK(c1.size() <= c0.size());
    const auto upper = e.admissible_basis(5, 42);
    for (const auto& y : c0) CHECK(upper.contains(y));
}

}
