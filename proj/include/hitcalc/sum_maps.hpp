#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hitcalc/hit_engine.hpp"
#include "hitcalc/monomial.hpp"

namespace hitcalc {

/// (l, L) with 1 <= l < l_1 < ... < l_r <= t, 0 <= r <= t - 1. Indices are 1-based.
struct PairLL {
    int l = 1;
    std::vector<int> L;

    int r() const { return static_cast<int>(L.size()); }
    bool valid_for(int t) const;
};

/// All (l, L) in N_t with min_length <= r <= t - 1, sorted by (l, L).
std::vector<PairLL> enumerate_pairs(int t, int min_length = 0);

/// Inserts a zero exponent at variable l (1-based): x_j -> x_j for j < l, x_j -> x_{j+1}
/// otherwise. Throws std::out_of_range unless 1 <= l <= t = arity(x) + 1.
Monomial q_map(int l, int t, const Monomial& x);

/// x_{l_u}^{2^{r-1} + ... + 2^{r-u}} prod_{u < d <= r} x_{l_d}^{2^{r-d}} in P_t; 1 for
/// empty L.
Monomial x_LU(const std::vector<int>& L, int u, int r, int t);

struct PsiOutcome {
    std::optional<Monomial> image;  // nullopt is the zero polynomial
    int u = 0;                      // selected index (0 when L is empty or no u exists)
    int matching_u = 0;             // number of u satisfying the four conditions
};

/// Sum's psi_{(l, L)} on a monomial of arity t - 1.
PsiOutcome psi_detail(int l, const std::vector<int>& L, const Monomial& x);
std::optional<Monomial> psi(int l, const std::vector<int>& L, const Monomial& x);

/// Union over l of q_map images; descending, unique. `t` is the target arity.
std::vector<Monomial> phi_zero(const std::vector<Monomial>& C, int t);
/// Union over (l, L) with r >= 1 of nonzero psi images having no zero exponent.
std::vector<Monomial> phi_positive(const std::vector<Monomial>& C, int t);

enum class RhoVariant { PositiveOnly, IncludeZero };
std::string to_string(RhoVariant v);
std::vector<int> u_set_variant(int t, int n, RhoVariant v);

/// Union over rho in U(t, n), rho >= 1, and 1 <= l <= t of x_l^{2^rho - 1} q_(l,t)(x) for x in
/// the positive part of the arity t - 1 basis in degree n - (2^rho - 1).
std::vector<Monomial> mothebe_uys_sets(Engine& engine, int t, int n);

/// C(t, n): x_j^{2^rho - 1} q_(j,t)(y) over rho in U(t, n) and every admissible y of arity t - 1
/// in degree n - (2^rho - 1).
std::vector<Monomial> c_set(Engine& engine, int t, int n, RhoVariant v);

struct EfcPartition {
    int t = 0;
    int n = 0;
    WeightVector omega;           // weight vector of the minimal spike
    std::vector<Monomial> block;  // positive admissibles of weight omega
    std::vector<Monomial> E;
    std::vector<Monomial> F;
    std::vector<Monomial> C;
    std::vector<Monomial> violations;  // members of E or C outside the block

    bool disjoint_cover() const;
};

/// Throws std::invalid_argument when mu(n) > t.
EfcPartition efc_partition(Engine& engine, int t, int n);

struct ConjectureVerdict {
    std::string conjecture;  // "gtS" or "gtP"
    int t = 0;
    int n = 0;
    std::optional<WeightVector> omega;
    RhoVariant variant = RhoVariant::PositiveOnly;
    bool hypothesis_met = true;
    bool holds = false;
    std::vector<Monomial> violations;
    std::vector<Monomial> missing;  // gtP: admissibles not produced by the left-hand side
    std::vector<Monomial> extra;    // gtP: produced monomials that are not admissibles of the block
    std::size_t checked = 0;

    /// "holds", "fails" or "hypothesis-not-met".
    std::string status() const;
};

nlohmann::json to_json(const ConjectureVerdict& v);

ConjectureVerdict conjecture_gtS_check(Engine& engine, int t, int n);
ConjectureVerdict conjecture_gtP_check(Engine& engine, int t, int n, const WeightVector& omega, RhoVariant v);

}  // namespace hitcalc
