#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hitcalc/gf2.hpp"
#include "hitcalc/monomial.hpp"
#include "hitcalc/steenrod.hpp"

namespace hitcalc {

inline constexpr const char* kEngineVersion = "1.0.0";

enum class Strategy { Monolithic, Stratified, Auto };
enum class Part { All, Zero, Positive };

std::string to_string(Strategy s);
std::string to_string(Part p);
Strategy parse_strategy(const std::string& s);
Part parse_part(const std::string& s);

struct EngineOptions {
    Strategy strategy = Strategy::Auto;
    SpanMode span = SpanMode::GeneratorSquares;
    /// Quotient out monomials certified hit by the minimal-spike weight criterion.
    bool singer_filter = true;
    /// Skip weight blocks whose monomials are all certified inadmissible through the
    /// squaring lift x = w z^2 (stratified strategy only).
    bool kameko_filter = true;
    unsigned threads = 1;
    std::uint64_t memory_limit = std::uint64_t{12} << 30;
};

class MemoryCeilingExceeded : public std::runtime_error {
public:
    MemoryCeilingExceeded(int t, int n, std::uint64_t projected, std::uint64_t limit);
    std::uint64_t projected() const { return projected_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t projected_;
    std::uint64_t limit_;
};

/// Admissible monomials for (t, n), optionally restricted to one weight block and/or to
/// the zero or positive part.
struct BasisReport {
    int t = 1;
    int n = 0;
    std::optional<WeightVector> block;  // nullopt: full scope
    Part part = Part::All;
    std::vector<Monomial> admissibles;  // descending monomial order
    std::string strategy;
    std::string engine_version = kEngineVersion;
    double elapsed_seconds = 0.0;

    std::size_t dim() const { return admissibles.size(); }
    bool contains(const Monomial& x) const;
    /// Scope tag used in serialization: `full` or `w4.3.2.1.1`.
    std::string scope_tag() const;
    /// Same content (t, n, scope, part, admissibles), ignoring provenance metadata.
    bool same_content(const BasisReport& other) const;
};

/// Echelonized hit space of (P_t)_n over the monomials of weight >= floor. Monomials below
/// the floor are quotiented out: with the minimal-spike floor they are hit; with a block
/// floor omega this realizes the quotient by (P_t)_n^{<omega}.
class HitSpace {
public:
    HitSpace(int t, int n, std::optional<WeightVector> floor, const EngineOptions& options);

    int arity() const { return t_; }
    int degree() const { return n_; }
    const std::optional<WeightVector>& floor() const { return floor_; }
    const std::vector<Monomial>& columns() const { return columns_; }
    const EchelonBasis& echelon() const { return echelon_; }
    std::size_t generator_count() const { return generators_; }

    std::optional<std::size_t> column_of(const Monomial& x) const;
    /// True when x lies below the floor.
    bool below_floor(const Monomial& x) const;

    /// Non-leading columns in descending monomial order.
    const std::vector<Monomial>& admissibles() const { return admissibles_; }
    std::optional<std::size_t> admissible_index(const Monomial& x) const;

    /// Terms below the floor are dropped.
    BitRow to_row(const Polynomial& f) const;
    /// Canonical representative modulo the hit space (and the floor quotient).
    Polynomial reduce(const Polynomial& f) const;
    bool is_hit(const Polynomial& f) const;
    /// Coordinates of [f] on the admissible basis.
    BitRow coordinates(const Polynomial& f) const;

    /// Projected echelon storage for this column scope.
    static std::uint64_t projected_bytes(std::size_t columns);

private:
    int t_;
    int n_;
    std::optional<WeightVector> floor_;
    MonomialIndexer indexer_;
    std::vector<std::int32_t> column_of_rank_;
    std::vector<Monomial> columns_;
    EchelonBasis echelon_;
    std::vector<Monomial> admissibles_;
    std::vector<std::int32_t> admissible_of_column_;
    std::size_t generators_ = 0;
};

struct KamekoVerdict {
    int t = 0;
    int n = 0;
    bool mu_condition = false;  // mu(2n + t) == t
    std::size_t dim_high = 0;   // dim (QP_t)_{2n+t}
    std::size_t dim_low = 0;    // dim (QP_t)_n
    bool dims_equal = false;
    bool bijective = false;
    std::size_t map_rank = 0;
};

struct BlockDecomposition {
    int t = 0;
    int n = 0;
    std::vector<std::pair<WeightVector, std::size_t>> blocks;  // ascending weight
    std::size_t full_dim = 0;
    bool holds = false;
};

/// Computation context with in-memory memoization of bases and hit spaces. Not thread-safe;
/// distinct Engines may run concurrently.
class ReportCache;

class Engine {
public:
    explicit Engine(EngineOptions options = {}, ReportCache* cache = nullptr);

    const EngineOptions& options() const { return options_; }

    BasisReport admissible_basis(int t, int n);
    BasisReport weight_block_basis(int t, int n, const WeightVector& omega);
    /// Hit space with the minimal-spike floor when the Singer filter is on and applicable.
    std::shared_ptr<const HitSpace> hit_space(int t, int n);
    /// Positive-part admissibles of (t, n), convenience over split_parts.
    BasisReport positive_part(int t, int n);

    bool block_certified_inadmissible(int t, int n, const WeightVector& omega);
    BlockDecomposition block_decomposition_check(int t, int n);
    KamekoVerdict kameko_check(int t, int n);

    Strategy resolve_strategy(int t, int n) const;
    std::optional<WeightVector> singer_floor(int t, int n) const;

private:
    BasisReport compute_monolithic(int t, int n);
    BasisReport compute_stratified(int t, int n);

    EngineOptions options_;
    ReportCache* cache_;
    std::map<std::pair<int, int>, BasisReport> bases_;
    std::map<std::pair<int, int>, std::shared_ptr<const HitSpace>> spaces_;
};

/// Partitions a full report into zero and positive parts.
std::pair<BasisReport, BasisReport> split_parts(const BasisReport& report);

/// All weight vectors occurring among monomials of (P_t)_n, ascending.
std::vector<WeightVector> occurring_weights(int t, int n);

/// Sq^0_*: a term x_1...x_t g^2 maps to g, other terms to zero.
Polynomial kameko_down(const Polynomial& f);

/// Certified hit when omega(x) < omega(minimal spike of its degree); false means no
/// conclusion. Throws std::invalid_argument when mu(deg x) > arity.
bool singer_hit_test(const Monomial& x);

/// Certified inadmissible when x = w z^{2^r} with every exponent of w below 2^r and z not
/// in `lower` (the admissible basis of z's degree). Throws std::invalid_argument on an
/// invalid factorization or a mismatched lower basis.
bool kameko_inadmissible_test(const Monomial& x, int r, const Monomial& w, const Monomial& z,
                              const BasisReport& lower);

}  // namespace hitcalc
