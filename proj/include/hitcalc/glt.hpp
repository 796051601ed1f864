#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hitcalc/gf2.hpp"
#include "hitcalc/hit_engine.hpp"
#include "hitcalc/steenrod.hpp"

namespace hitcalc {

/// Linear substitution generating GL_t. Swap exchanges x_i and x_j; Transvection sends x_i
/// to x_i + x_j and fixes the other variables. Indices are 1-based.
struct GlGenerator {
    enum class Kind { Swap, Transvection };
    Kind kind = Kind::Swap;
    int i = 1;
    int j = 2;

    std::string name() const;
};

/// Adjacent swaps (i, i+1) and the transvection x_1 -> x_1 + x_2.
std::vector<GlGenerator> standard_generators(int t);
/// Transpositions (i, t) and the transvection x_t -> x_t + x_1; generates the same group.
std::vector<GlGenerator> alternate_generators(int t);

Polynomial substitute(const GlGenerator& g, const Monomial& x);
Polynomial substitute(const GlGenerator& g, const Polynomial& f);

/// Row c holds the admissible coordinates of g applied to admissible monomial c.
std::vector<BitRow> action_matrix(const GlGenerator& g, const HitSpace& space);

struct InvariantSpace {
    int t = 0;
    int n = 0;
    std::vector<Monomial> admissibles;  // coordinate labels
    std::vector<BitRow> vectors;        // basis of the invariants, in admissible coordinates

    std::size_t dim() const { return vectors.size(); }
};

/// Common fixed space of the generators acting on each admissible coordinate row vector.
InvariantSpace invariant_subspace(const HitSpace& space, const std::vector<GlGenerator>& gens);

nlohmann::json to_json(const InvariantSpace& inv);

}  // namespace hitcalc
