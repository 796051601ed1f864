#include "doctest.h"

#include <random>

#include "common.hpp"
#include "hitcalc/glt.hpp"

using namespace hitcalc;
using namespace testing_support;

namespace {

using Matrix = std::vector<std::vector<int>>;

std::vector<Matrix> general_linear_group(int t)
{
    std::vector<Matrix> out;
    const int cells = t * t;
    for (int bits = 0; bits < (1 << cells); ++bits) {
        Matrix m(static_cast<std::size_t>(t), std::vector<int>(static_cast<std::size_t>(t)));
        for (int c = 0; c < cells; ++c) m[static_cast<std::size_t>(c / t)][static_cast<std::size_t>(c % t)] = (bits >> c) & 1;
        std::vector<std::vector<std::uint8_t>> rows;
        for (const auto& r : m) rows.emplace_back(r.begin(), r.end());
        if (oracle::rank(rows, static_cast<std::size_t>(t)) == static_cast<std::size_t>(t)) out.push_back(m);
    }
    return out;
}

Matrix matrix_of(const GlGenerator& g, int t)
{
    Matrix m(static_cast<std::size_t>(t), std::vector<int>(static_cast<std::size_t>(t), 0));
    for (int j = 0; j < t; ++j) m[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1;
    const auto i = static_cast<std::size_t>(g.i - 1);
    const auto j = static_cast<std::size_t>(g.j - 1);
    if (g.kind == GlGenerator::Kind::Swap) {
        m[i][i] = m[j][j] = 0;
        m[i][j] = m[j][i] = 1;
    } else {
        m[i][j] = 1;
    }
    return m;
}

std::vector<BitRow> multiply(const std::vector<BitRow>& a, const std::vector<BitRow>& b)
{
    std::vector<BitRow> out;
    for (const auto& row : a) {
        BitRow r(b.empty() ? 0 : b[0].width());
        for (auto c : row.set_columns()) r ^= b[c];
        out.push_back(r);
    }
    return out;
}

std::vector<BitRow> identity(std::size_t d)
{
    std::vector<BitRow> out;
    for (std::size_t k = 0; k < d; ++k) {
        BitRow r(d);
        r.set(k);
        out.push_back(r);
    }
    return out;
}

// Dimension of the GL_t-fixed classes by exhausting all coordinate vectors.
std::size_t brute_invariant_dim(int t, int n)
{
    const oracle::HitSpace ref(t, n);
    const auto adm = ref.admissibles();
    const auto group = general_linear_group(t);
    std::size_t fixed = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << adm.size()); ++v) {
        oracle::Poly f;
        for (std::size_t k = 0; k < adm.size(); ++k)
            if ((v >> k) & 1) f.insert(adm[k]);
        bool ok = true;
        for (const auto& g : group) {
            oracle::Poly diff = f;
            for (const auto& x : f)
                for (const auto& y : oracle::substitute(g, x)) oracle::toggle(diff, y);
            if (!ref.is_hit(diff)) {
                ok = false;
                break;
            }
        }
        fixed += ok;
    }
    std::size_t dim = 0;
    while ((std::size_t{1} << dim) < fixed) ++dim;
    return dim;
}

}  // namespace

TEST_SUITE("glt") {

TEST_CASE("substitute")
{
    const GlGenerator swap{GlGenerator::Kind::Swap, 1, 2};
    const GlGenerator tv{GlGenerator::Kind::Transvection, 1, 2};
    CHECK(substitute(swap, parse_monomial("x1^3 x2", 2)) == Polynomial(parse_monomial("x1 x2^3", 2)));
    CHECK(substitute(tv, parse_monomial("x1^2", 2)) == parse_polynomial("x1^2 + x2^2", 2));
    CHECK(substitute(tv, parse_monomial("x1 x2", 2)) == parse_polynomial("x1 x2 + x2^2", 2));
    CHECK_THROWS_AS(substitute(GlGenerator{GlGenerator::Kind::Swap, 1, 3}, parse_monomial("x1", 2)),
                    std::invalid_argument);
    CHECK(swap.name() == "swap(1,2)");
}

TEST_CASE("substitute agrees with direct expansion")
{
    std::mt19937_64 rng(6);
    for (int k = 0; k < 300; ++k) {
        const int t = 2 + static_cast<int>(rng() % 3);
        const auto x = random_monomial(rng, t, static_cast<int>(rng() % 14));
        for (const auto& g : standard_generators(t))
            CHECK(to_poly(substitute(g, x)) == oracle::substitute(matrix_of(g, t), to_exps(x)));
        for (const auto& g : alternate_generators(t))
            CHECK(to_poly(substitute(g, x)) == oracle::substitute(matrix_of(g, t), to_exps(x)));
    }
}

TEST_CASE("generating sets")
{
    CHECK(standard_generators(1).empty());
    CHECK(standard_generators(5).size() == 5);
    // Both sets generate GL_3(F_2): closing under products reaches all 168 elements.
    for (const auto& gens : {standard_generators(3), alternate_generators(3)}) {
        std::set<Matrix> seen{matrix_of({GlGenerator::Kind::Swap, 1, 2}, 3)};
        auto mul = [](const Matrix& a, const Matrix& b) {
            Matrix c(3, std::vector<int>(3, 0));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) c[i][j] ^= a[i][k] & b[k][j];
            return c;
        };
        for (bool grew = true; grew;) {
            grew = false;
            for (const auto& m : std::vector<Matrix>(seen.begin(), seen.end()))
                for (const auto& g : gens) grew |= seen.insert(mul(m, matrix_of(g, 3))).second;
        }
        CHECK(seen.size() == 168);
    }
}

TEST_CASE("action matrices")
{
    Engine e;
    for (int n = 0; n <= 6; ++n) {
        auto space = e.hit_space(1, n);
        CHECK(invariant_subspace(*space, standard_generators(1)).dim() == space->admissibles().size());
    }
    for (int n = 1; n <= 12; ++n) {
        auto space = e.hit_space(3, n);
        const auto d = space->admissibles().size();
        const auto gens = standard_generators(3);
        std::vector<std::vector<BitRow>> ms;
        for (const auto& g : gens) {
            const auto m = action_matrix(g, *space);
            REQUIRE(m.size() == d);
            CHECK(echelonize(m, d).rank() == d);
            CHECK(multiply(m, m) == identity(d));
            ms.push_back(m);
        }
        if (n <= 10) {
            // (s1 s2)^3 = 1 for the adjacent swaps.
            auto s12 = multiply(ms[0], ms[1]);
            CHECK(multiply(multiply(s12, s12), s12) == identity(d));
        }
    }
}

TEST_CASE("hit elements map to hit elements")
{
    Engine e;
    std::mt19937_64 rng(31);
    for (int t = 2; t <= 4; ++t)
        for (int n = 2; n <= 19; n += 3) {
            auto space = e.hit_space(t, n);
            for (int k = 0; k < 20; ++k) {
                const int i = 1 << (rng() % 3);
                if (i > n) continue;
                const Polynomial h = sq(i, random_monomial(rng, t, n - i));
                for (const auto& g : standard_generators(t)) CHECK(space->is_hit(substitute(g, h)));
            }
        }
}

TEST_CASE("action does not depend on the spanning set")
{
    EngineOptions all;
    all.span = SpanMode::AllSquares;
    all.singer_filter = false;
    Engine a(all), b;
    for (auto [t, n] : {std::pair{3, 10}, std::pair{4, 13}, std::pair{4, 19}}) {
        auto sa = a.hit_space(t, n);
        auto sb = b.hit_space(t, n);
        REQUIRE(sa->admissibles() == sb->admissibles());
        for (const auto& g : standard_generators(t)) CHECK(action_matrix(g, *sa) == action_matrix(g, *sb));
    }
}

TEST_CASE("invariants")
{
    Engine e;
    const auto inv22 = invariant_subspace(*e.hit_space(2, 2), standard_generators(2));
    REQUIRE(inv22.dim() == 1);
    REQUIRE(inv22.admissibles.size() == 1);
    CHECK(inv22.admissibles[0] == parse_monomial("x1 x2", 2));
    const auto j = to_json(inv22);
    CHECK(j["dim"] == 1);
    CHECK(j["basis"][0][0] == "x1 x2");
}

TEST_CASE("invariants agree with a full-group brute force")
{
    Engine e;
    for (int t = 2; t <= 3; ++t)
        for (int n = 1; n <= 12; ++n) {
            auto space = e.hit_space(t, n);
            if (space->admissibles().size() > 12) continue;
            INFO("t=" << t << " n=" << n);
            const auto d1 = invariant_subspace(*space, standard_generators(t)).dim();
            const auto d2 = invariant_subspace(*space, alternate_generators(t)).dim();
            CHECK(d1 == d2);
            CHECK(d1 == brute_invariant_dim(t, n));
        }
}

TEST_CASE("invariant vectors are fixed")
{
    Engine e;
    for (auto [t, n] : {std::pair{3, 7}, std::pair{4, 11}, std::pair{4, 19}}) {
        auto space = e.hit_space(t, n);
        const auto inv = invariant_subspace(*space, standard_generators(t));
        for (const auto& g : standard_generators(t)) {
            const auto m = action_matrix(g, *space);
            for (const auto& v : inv.vectors) {
                BitRow img(v.width());
                for (auto c : v.set_columns()) img ^= m[c];
                CHECK(img == v);
            }
        }
    }
}

}
