#include "doctest.h"

#include <random>
#include <set>

#include "common.hpp"
#include "hitcalc/arith.hpp"
#include "hitcalc/hit_engine.hpp"

using namespace hitcalc;
using namespace testing_support;

namespace {

EngineOptions configured(Strategy s, SpanMode span, bool singer, bool kameko, unsigned threads = 1)
{
    EngineOptions o;
    o.strategy = s;
    o.span = span;
    o.singer_filter = singer;
    o.kameko_filter = kameko;
    o.threads = threads;
    return o;
}

EngineOptions plain()
{
    return configured(Strategy::Monolithic, SpanMode::AllSquares, false, false);
}

}  // namespace

TEST_SUITE("hit-engine") {

TEST_CASE("small bases")
{
    Engine e;
    const auto b = e.admissible_basis(1, 3);
    REQUIRE(b.dim() == 1);
    CHECK(b.admissibles[0] == parse_monomial("x1^3", 1));
    CHECK(mu(5) == 3);
    CHECK(e.admissible_basis(2, 5).dim() == 0);
    CHECK(e.admissible_basis(2, 6).dim() == 1);
    CHECK(e.admissible_basis(2, 2).dim() == 1);
    CHECK(e.admissible_basis(3, 0).dim() == 1);
    CHECK_THROWS_AS(e.admissible_basis(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(e.admissible_basis(2, -1), std::invalid_argument);
}

TEST_CASE("engine equals the dense oracle for t <= 3, n <= 14 and t = 4, n <= 12")
{
    Engine e;
    for (int t = 1; t <= 4; ++t)
        for (int n = 0; n <= (t == 4 ? 12 : 14); ++n) {
            INFO("t=" << t << " n=" << n);
            const oracle::HitSpace ref(t, n);
            CHECK(to_exps(e.admissible_basis(t, n).admissibles) == ref.admissibles());
        }
}

TEST_CASE("(4, 19) against the dense oracle")
{
    Engine e;
    const oracle::HitSpace ref(4, 19);
    const auto got = e.admissible_basis(4, 19);
    CHECK(got.dim() == 140);
    CHECK(to_exps(got.admissibles) == ref.admissibles());
}

TEST_CASE("all configurations agree for t <= 4, n <= 20")
{
    std::vector<EngineOptions> configs;
    for (auto s : {Strategy::Monolithic, Strategy::Stratified})
        for (auto span : {SpanMode::AllSquares, SpanMode::GeneratorSquares})
            for (bool singer : {false, true})
                for (bool kameko : {false, true}) configs.push_back(configured(s, span, singer, kameko));
    std::vector<Engine> engines(configs.begin(), configs.end());
    for (int t = 1; t <= 4; ++t)
        for (int n = 0; n <= 20; ++n) {
            INFO("t=" << t << " n=" << n);
            const auto ref = engines[0].admissible_basis(t, n).admissibles;
            for (std::size_t k = 1; k < engines.size(); ++k) CHECK(engines[k].admissible_basis(t, n).admissibles == ref);
        }
}

TEST_CASE("vanishing when mu(n) > t")
{
    Engine e(plain());
    for (int t = 1; t <= 3; ++t)
        for (int n = 0; n <= 40; ++n)
            if (mu(n) > t) CHECK(e.admissible_basis(t, n).dim() == 0);
}

TEST_CASE("spikes are admissible")
{
    Engine e;
    for (int t = 1; t <= 4; ++t)
        for (int n = 0; n <= 24; ++n) {
            const auto b = e.admissible_basis(t, n);
            for (const auto& m : enumerate_monomials(t, n))
                if (is_spike(m)) CHECK(b.contains(m));
        }
}

TEST_CASE("split_parts")
{
    Engine e;
    const auto [zero, positive] = split_parts(e.admissible_basis(4, 42));
    CHECK(zero.dim() == 0);
    CHECK(positive.dim() == 140);
    const auto [z3, p3] = split_parts(e.admissible_basis(3, 7));
    CHECK(z3.dim() + p3.dim() == e.admissible_basis(3, 7).dim());
    for (const auto& m : z3.admissibles) CHECK(m.has_zero_exponent());
    for (const auto& m : p3.admissibles) CHECK_FALSE(m.has_zero_exponent());
    CHECK_THROWS_AS(split_parts(z3), std::invalid_argument);
}

TEST_CASE("weight blocks")
{
    Engine e;
    CHECK(e.weight_block_basis(3, 6, WeightVector{0, 3}).dim() == 0);
    CHECK(e.weight_block_basis(2, 4, WeightVector{4}).dim() == 0);
    CHECK_THROWS_AS(e.weight_block_basis(3, 7, WeightVector{2}), std::invalid_argument);
    for (int n = 0; n <= 12; ++n) {
        const auto d = e.block_decomposition_check(3, n);
        CHECK(d.holds);
    }
    const auto d11 = e.block_decomposition_check(1, 1);
    CHECK(d11.holds);
    REQUIRE(d11.blocks.size() == 1);
    CHECK(d11.blocks[0].first == WeightVector{1});
}

TEST_CASE("weight blocks of (QP_4)_19 from the dense oracle")
{
    Engine e;
    const oracle::HitSpace ref(4, 19);
    std::map<std::vector<int>, std::size_t> counts;
    for (const auto& a : ref.admissibles()) ++counts[oracle::weights(a)];
    for (const auto& w : occurring_weights(4, 19)) {
        const auto got = e.weight_block_basis(4, 19, w).dim();
        CHECK(got == counts[w.entries()]);
    }
}

TEST_CASE("kameko_down")
{
    const auto g = parse_monomial("x1^31 x2^7 x3^3 x4", 5);
    const auto x = parse_monomial("x1 x2 x3 x4 x5", 5) * power(g, 2);
    CHECK(x.degree() == 89);
    CHECK(kameko_down(Polynomial(x)) == Polynomial(g));
    CHECK(kameko_down(parse_polynomial("x1^2 x2^3 x3^2", 3)).is_zero());
    CHECK_THROWS_AS(kameko_down(parse_polynomial("x1^2 x2", 2)), std::invalid_argument);
}

TEST_CASE("kameko_check")
{
    Engine e;
    const auto a = e.kameko_check(3, 5);
    CHECK(a.mu_condition);
    CHECK(a.bijective);
    const auto b = e.kameko_check(2, 2);
    CHECK(b.mu_condition);
    CHECK(b.dim_high == b.dim_low);
    CHECK(b.bijective);
    const auto c = e.kameko_check(4, 19);
    CHECK(c.mu_condition);
    CHECK(c.dim_high == 140);
    CHECK(c.dim_low == 140);
    CHECK(c.bijective);
    // Sq^0_* is onto in every degree.
    for (int n = 0; n <= 8; ++n) {
        const auto v = e.kameko_check(3, n);
        CHECK(v.map_rank == v.dim_low);
        if (v.mu_condition) CHECK(v.bijective);
    }
}

TEST_CASE("singer_hit_test")
{
    CHECK_FALSE(singer_hit_test(parse_monomial("x1^31 x2^7 x3^3 x4", 5)));
    CHECK_THROWS_AS(singer_hit_test(parse_monomial("x1^2", 1)), std::invalid_argument);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 2000; ++k) {
        const auto x = random_monomial(rng, 5, 42);
        if (weight_vector(x).at(1) < 4) CHECK(singer_hit_test(x));
    }
}

TEST_CASE("singer_hit_test is sound against the dense oracle")
{
    for (int t = 1; t <= 4; ++t)
        for (int n = 1; n <= (t == 4 ? 16 : 20); ++n) {
            if (mu(n) > t) continue;
            const oracle::HitSpace ref(t, n);
            for (const auto& m : enumerate_monomials(t, n))
                if (singer_hit_test(m)) CHECK(ref.is_hit({to_exps(m)}));
        }
}

TEST_CASE("singer_hit_test is sound against engine reduction up to n = 20")
{
    Engine e(plain());
    for (int t = 1; t <= 4; ++t)
        for (int n = 1; n <= 20; ++n) {
            if (mu(n) > t) continue;
            auto space = e.hit_space(t, n);
            for (const auto& m : enumerate_monomials(t, n))
                if (singer_hit_test(m)) CHECK(space->is_hit(Polynomial(m)));
        }
}

TEST_CASE("kameko_inadmissible_test")
{
    Engine e;
    const auto w = parse_monomial("x1 x2 x3 x4 x5", 5);
    const auto lower = e.admissible_basis(5, 3);
    // z = x1^2 x2 is not admissible (x1^2 x2 ~ x1 x2^2 + hits).
    const auto z = parse_monomial("x1^2 x2", 5);
    REQUIRE_FALSE(lower.contains(z));
    CHECK(kameko_inadmissible_test(w * power(z, 2), 1, w, z, lower));
    const auto za = lower.admissibles.front();
    CHECK_FALSE(kameko_inadmissible_test(w * power(za, 2), 1, w, za, lower));
    CHECK_THROWS_AS(kameko_inadmissible_test(w * power(z, 2), 1, w, za, lower), std::invalid_argument);
    CHECK_THROWS_AS(kameko_inadmissible_test(power(w, 2) * power(z, 2), 1, power(w, 2), z, lower),
                    std::invalid_argument);
    CHECK_THROWS_AS(kameko_inadmissible_test(w * power(z, 2), 1, w, z, e.admissible_basis(5, 5)),
                    std::invalid_argument);
}

TEST_CASE("kameko filter soundness")
{
    // Every monomial the r = 1 test certifies is absent from the unfiltered basis.
    Engine e(plain());
    for (int t = 1; t <= 4; ++t)
        for (int n = 1; n <= 20; ++n) {
            const auto full = e.admissible_basis(t, n);
            for (const auto& x : enumerate_monomials(t, n)) {
                Monomial w(t), z(t);
                for (int j = 0; j < t; ++j) {
                    w.set(j, x[j] & 1);
                    z.set(j, x[j] >> 1);
                }
                if (z.degree() == n) continue;
                if (kameko_inadmissible_test(x, 1, w, z, e.admissible_basis(t, z.degree())))
                    CHECK_FALSE(full.contains(x));
            }
            std::set<WeightVector> present;
            for (const auto& m : full.admissibles) present.insert(weight_vector(m));
            Engine filtered;
            for (const auto& omega : occurring_weights(t, n))
                if (filtered.block_certified_inadmissible(t, n, omega)) CHECK_FALSE(present.count(omega));
        }
}

TEST_CASE("memory ceiling")
{
    EngineOptions o = plain();
    o.memory_limit = 1 << 20;
    Engine e(o);
    CHECK_THROWS_AS(e.admissible_basis(5, 30), MemoryCeilingExceeded);
    CHECK(HitSpace::projected_bytes(128) == 128 * 2 * 8);
    EngineOptions a;
    a.memory_limit = 1 << 20;
    CHECK(Engine(a).resolve_strategy(5, 30) == Strategy::Stratified);
    CHECK(Engine().resolve_strategy(3, 10) == Strategy::Monolithic);
}

TEST_CASE("thread count does not change the result")
{
    Engine one(configured(Strategy::Monolithic, SpanMode::GeneratorSquares, false, false, 1));
    Engine three(configured(Strategy::Monolithic, SpanMode::GeneratorSquares, false, false, 3));
    for (auto [t, n] : {std::pair{4, 19}, std::pair{4, 23}, std::pair{5, 12}}) {
        CHECK(one.admissible_basis(t, n).admissibles == three.admissible_basis(t, n).admissibles);
        CHECK(one.hit_space(t, n)->generator_count() == three.hit_space(t, n)->generator_count());
    }
}

TEST_CASE("HitSpace reduction")
{
    Engine e;
    auto space = e.hit_space(3, 9);
    std::mt19937_64 rng(21);
    for (int k = 0; k < 200; ++k) {
        const auto f = Polynomial(random_monomial(rng, 3, 9));
        const auto y = random_monomial(rng, 3, 9 - 2);
        const auto g = f + sq(2, y);
        CHECK(space->reduce(g) == space->reduce(f));
        const auto r = space->reduce(f);
        for (const auto& m : r.terms()) CHECK(space->admissible_index(m).has_value());
        CHECK(space->is_hit(sq(1, random_monomial(rng, 3, 8))));
    }
    CHECK_THROWS_AS(space->to_row(Polynomial(parse_monomial("x1^2", 3))), std::invalid_argument);
}

TEST_CASE("strategy and part names")
{
    CHECK(parse_strategy("stratified") == Strategy::Stratified);
    CHECK(to_string(Strategy::Monolithic) == "monolithic");
    CHECK(parse_part("zero") == Part::Zero);
    CHECK_THROWS_AS(parse_part("half"), std::invalid_argument);
    CHECK_THROWS_AS(parse_strategy("fast"), std::invalid_argument);
}

}
