#include "hitcalc/glt.hpp"

#include <stdexcept>

namespace hitcalc {

namespace {

void check(const GlGenerator& g, int t)
{
    if (g.i < 1 || g.j < 1 || g.i > t || g.j > t || g.i == g.j)
        throw std::invalid_argument("GlGenerator: indices out of range for arity " + std::to_string(t));
}

}  // namespace

std::string GlGenerator::name() const
{
    if (kind == Kind::Swap) return "swap(" + std::to_string(i) + "," + std::to_string(j) + ")";
    return "x" + std::to_string(i) + "->x" + std::to_string(i) + "+x" + std::to_string(j);
}

std::vector<GlGenerator> standard_generators(int t)
{
    std::vector<GlGenerator> gens;
    for (int i = 1; i < t; ++i) gens.push_back({GlGenerator::Kind::Swap, i, i + 1});
    if (t >= 2) gens.push_back({GlGenerator::Kind::Transvection, 1, 2});
    return gens;
}

std::vector<GlGenerator> alternate_generators(int t)
{
    // Star transpositions (i t) plus x_t -> x_t + x_1.
    std::vector<GlGenerator> gens;
    if (t < 2) return gens;
    for (int i = t - 1; i >= 1; --i) gens.push_back({GlGenerator::Kind::Swap, i, t});
    gens.push_back({GlGenerator::Kind::Transvection, t, 1});
    return gens;
}

Polynomial substitute(const GlGenerator& g, const Monomial& x)
{
    const int t = x.arity();
    check(g, t);
    const int i = g.i - 1;
    const int j = g.j - 1;
    if (g.kind == GlGenerator::Kind::Swap) {
        Monomial y = x;
        y.set(i, x[j]);
        y.set(j, x[i]);
        return Polynomial(y);
    }
    // (x_i + x_j)^a = sum over submasks k of a of x_i^k x_j^{a-k} by Lucas.
    const int a = x[i];
    std::vector<Monomial> terms;
    for (int k = a;; k = (k - 1) & a) {
        Monomial y = x;
        y.set(i, k);
        y.set(j, x[j] + (a - k));
        terms.push_back(y);
        if (k == 0) break;
    }
    return Polynomial::from_terms(t, x.degree(), std::move(terms));
}

Polynomial substitute(const GlGenerator& g, const Polynomial& f)
{
    Polynomial out(f.arity(), f.degree());
    for (const auto& m : f.terms()) out += substitute(g, m);
    return out;
}

std::vector<BitRow> action_matrix(const GlGenerator& g, const HitSpace& space)
{
    std::vector<BitRow> rows;
    rows.reserve(space.admissibles().size());
    for (const auto& c : space.admissibles()) rows.push_back(space.coordinates(substitute(g, c)));
    return rows;
}

InvariantSpace invariant_subspace(const HitSpace& space, const std::vector<GlGenerator>& gens)
{
    InvariantSpace inv;
    inv.t = space.arity();
    inv.n = space.degree();
    inv.admissibles = space.admissibles();
    const std::size_t d = inv.admissibles.size();
    if (gens.empty()) {
        for (std::size_t k = 0; k < d; ++k) {
            BitRow e(d);
            e.set(k);
            inv.vectors.push_back(std::move(e));
        }
        return inv;
    }
    // v is fixed by every g iff v [M_g1 - I | M_g2 - I | ...] = 0.
    const std::size_t width = d * gens.size();
    std::vector<BitRow> stacked(d, BitRow(width));
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const auto m = action_matrix(gens[gi], space);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c : m[r].set_columns()) stacked[r].flip(gi * d + c);
            stacked[r].flip(gi * d + r);
        }
    }
    inv.vectors = left_kernel(stacked, width);
    return inv;
}

nlohmann::json to_json(const InvariantSpace& inv)
{
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& v : inv.vectors) {
        nlohmann::json terms = nlohmann::json::array();
        for (std::size_t c : v.set_columns()) terms.push_back(to_string(inv.admissibles[c]));
        basis.push_back(terms);
    }
    return {{"t", inv.t}, {"n", inv.n}, {"dim", inv.dim()}, {"space_dim", inv.admissibles.size()}, {"basis", basis}};
}

}  // namespace hitcalc
