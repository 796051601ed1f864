#include "hitcalc/hit_engine.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

#include "hitcalc/arith.hpp"
#include "hitcalc/cache.hpp"
#include "order_key.hpp"

namespace hitcalc {

std::string to_string(Strategy s)
{
    switch (s) {
    case Strategy::Monolithic: return "monolithic";
    case Strategy::Stratified: return "stratified";
    case Strategy::Auto: return "auto";
    }
    return "auto";
}

std::string to_string(Part p)
{
    switch (p) {
    case Part::All: return "all";
    case Part::Zero: return "zero";
    case Part::Positive: return "positive";
    }
    return "all";
}

Strategy parse_strategy(const std::string& s)
{
    if (s == "monolithic") return Strategy::Monolithic;
    if (s == "stratified") return Strategy::Stratified;
    if (s == "auto") return Strategy::Auto;
    throw std::invalid_argument("unknown strategy '" + s + "'");
}

Part parse_part(const std::string& s)
{
    if (s == "all") return Part::All;
    if (s == "zero") return Part::Zero;
    if (s == "positive") return Part::Positive;
    throw std::invalid_argument("unknown part '" + s + "'");
}

MemoryCeilingExceeded::MemoryCeilingExceeded(int t, int n, std::uint64_t projected, std::uint64_t limit)
    : std::runtime_error("echelon storage for (t=" + std::to_string(t) + ", n=" + std::to_string(n) +
                         ") projected at " + std::to_string(projected) + " bytes exceeds the limit of " +
                         std::to_string(limit) +
                         " bytes; use --strategy stratified with the weight filters enabled"),
      projected_(projected),
      limit_(limit)
{
}

bool BasisReport::contains(const Monomial& x) const
{
    return std::binary_search(admissibles.begin(), admissibles.end(), x, [](const Monomial& a, const Monomial& b) {
        return detail::order_key(a) > detail::order_key(b);
    });
}

std::string BasisReport::scope_tag() const
{
    if (!block) return "full";
    std::string s = "w";
    for (std::size_t i = 0; i < block->size(); ++i) {
        if (i) s += '.';
        s += std::to_string(block->entries()[i]);
    }
    return s;
}

bool BasisReport::same_content(const BasisReport& o) const
{
    return t == o.t && n == o.n && block == o.block && part == o.part && admissibles == o.admissibles;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void sort_descending(std::vector<Monomial>& v)
{
    std::vector<std::pair<detail::OrderKey, Monomial>> keyed;
    keyed.reserve(v.size());
    for (const auto& m : v) keyed.emplace_back(detail::order_key(m), m);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    v.clear();
    for (auto& [k, m] : keyed) v.push_back(m);
}

template <class F>
void for_each_composition(int t, int n, F&& f)
{
    Monomial cur(t);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == t - 1) {
            cur.set(pos, remaining);
            f(static_cast<const Monomial&>(cur));
            return;
        }
        for (int a = remaining; a >= 0; --a) {
            cur.set(pos, a);
            self(self, pos + 1, remaining - a);
        }
    };
    if (n >= 0) rec(rec, 0, n);
}

int first_weight(const Monomial& x)
{
    int w = 0;
    for (int j = 0; j < x.arity(); ++j) w += x[j] & 1;
    return w;
}

// Flat list of sparse rows.
struct RowBatch {
    std::vector<std::uint32_t> columns;
    std::vector<std::size_t> offsets{0};

    void clear()
    {
        columns.clear();
        offsets.assign(1, 0);
    }
};

}  // namespace

std::uint64_t HitSpace::projected_bytes(std::size_t columns)
{
    return static_cast<std::uint64_t>(columns) * words_for(columns) * sizeof(Word);
}

HitSpace::HitSpace(int t, int n, std::optional<WeightVector> floor, const EngineOptions& options)
    : t_(t), n_(n), floor_(std::move(floor)), indexer_(t, n)
{
    if (n < 0) throw std::invalid_argument("HitSpace: negative degree");
    if (floor_ && floor_->empty()) floor_.reset();

    column_of_rank_.assign(indexer_.size(), -1);
    for (auto& m : enumerate_monomials(t, n)) {
        if (floor_ && weight_vector(m) < *floor_) continue;
        column_of_rank_[indexer_.rank(m)] = static_cast<std::int32_t>(columns_.size());
        columns_.push_back(m);
    }

    const std::uint64_t projected = projected_bytes(columns_.size());
    if (projected > options.memory_limit) throw MemoryCeilingExceeded(t, n, projected, options.memory_limit);

    EchelonBuilder builder(columns_.size());
    // Every term of Sq^i(y) has omega_1 at most omega_1(y), so sources below the floor's
    // first entry contribute nothing.
    const int min_first = floor_ ? floor_->at(1) : 0;
    const unsigned threads = std::max(1u, options.threads);
    constexpr std::size_t kChunk = std::size_t{1} << 15;

    for (int i : spanning_orders(n, options.span)) {
        std::vector<Monomial> sources;
        auto drain = [&] {
            if (sources.empty()) return;
            std::vector<RowBatch> parts(threads);
            auto work = [&](unsigned k) {
                const std::size_t lo = sources.size() * k / threads;
                const std::size_t hi = sources.size() * (k + 1) / threads;
                RowBatch& out = parts[k];
                std::vector<std::uint32_t> row;
                for (std::size_t s = lo; s < hi; ++s) {
                    row.clear();
                    for_each_sq_term(i, sources[s], [&](const Monomial& term) {
                        const auto c = column_of_rank_[indexer_.rank(term)];
                        if (c >= 0) row.push_back(static_cast<std::uint32_t>(c));
                        return true;
                    });
                    if (row.empty()) continue;
                    out.columns.insert(out.columns.end(), row.begin(), row.end());
                    out.offsets.push_back(out.columns.size());
                }
            };
            if (threads == 1) {
                work(0);
            } else {
                std::vector<std::jthread> pool;
                for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k);
            }
            for (const auto& part : parts) {
                for (std::size_t r = 0; r + 1 < part.offsets.size(); ++r) {
                    std::span<const std::uint32_t> cols(part.columns.data() + part.offsets[r],
                                                        part.offsets[r + 1] - part.offsets[r]);
                    builder.insert_columns(cols);
                    ++generators_;
                }
            }
            sources.clear();
        };
        for_each_composition(t, n - i, [&](const Monomial& y) {
            if (first_weight(y) < min_first) return;
            sources.push_back(y);
            if (sources.size() >= kChunk) drain();
        });
        drain();
    }
    echelon_ = std::move(builder).finish();

    admissible_of_column_.assign(columns_.size(), -1);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (echelon_.is_leading(c)) continue;
        admissible_of_column_[c] = static_cast<std::int32_t>(admissibles_.size());
        admissibles_.push_back(columns_[c]);
    }
}

std::optional<std::size_t> HitSpace::column_of(const Monomial& x) const
{
    if (x.arity() != t_ || x.degree() != n_) return std::nullopt;
    const auto c = column_of_rank_[indexer_.rank(x)];
    if (c < 0) return std::nullopt;
    return static_cast<std::size_t>(c);
}

bool HitSpace::below_floor(const Monomial& x) const
{
    return floor_ && weight_vector(x) < *floor_;
}

std::optional<std::size_t> HitSpace::admissible_index(const Monomial& x) const
{
    auto c = column_of(x);
    if (!c || admissible_of_column_[*c] < 0) return std::nullopt;
    return static_cast<std::size_t>(admissible_of_column_[*c]);
}

BitRow HitSpace::to_row(const Polynomial& f) const
{
    BitRow row(columns_.size());
    if (f.is_zero()) return row;
    if (f.arity() != t_ || f.degree() != n_)
        throw std::invalid_argument("HitSpace: polynomial of arity " + std::to_string(f.arity()) + ", degree " +
                                    std::to_string(f.degree()) + " outside (t=" + std::to_string(t_) +
                                    ", n=" + std::to_string(n_) + ")");
    for (const auto& m : f.terms()) {
        const auto c = column_of_rank_[indexer_.rank(m)];
        if (c >= 0) row.flip(static_cast<std::size_t>(c));
    }
    return row;
}

Polynomial HitSpace::reduce(const Polynomial& f) const
{
    BitRow row = to_row(f);
    echelon_.reduce_in_place(row.words());
    std::vector<Monomial> terms;
    for (auto c : row.set_columns()) terms.push_back(columns_[c]);
    if (terms.empty()) return Polynomial(t_, n_);
    return Polynomial::from_terms(t_, n_, std::move(terms));
}

bool HitSpace::is_hit(const Polynomial& f) const
{
    BitRow row = to_row(f);
    echelon_.reduce_in_place(row.words());
    return row.is_zero();
}

BitRow HitSpace::coordinates(const Polynomial& f) const
{
    BitRow row = to_row(f);
    echelon_.reduce_in_place(row.words());
    BitRow out(admissibles_.size());
    for (auto c : row.set_columns()) out.set(static_cast<std::size_t>(admissible_of_column_[c]));
    return out;
}

std::pair<BasisReport, BasisReport> split_parts(const BasisReport& report)
{
    if (report.block || report.part != Part::All)
        throw std::invalid_argument("split_parts: expects a full-scope report of part 'all'");
    BasisReport zero = report;
    BasisReport positive = report;
    zero.part = Part::Zero;
    positive.part = Part::Positive;
    zero.admissibles.clear();
    positive.admissibles.clear();
    for (const auto& m : report.admissibles) (m.has_zero_exponent() ? zero : positive).admissibles.push_back(m);
    return {std::move(zero), std::move(positive)};
}

std::vector<WeightVector> occurring_weights(int t, int n)
{
    std::set<detail::OrderKey> seen;
    std::vector<WeightVector> out;
    for_each_composition(t, n, [&](const Monomial& m) {
        auto k = detail::order_key(m);
        k.exps = {};
        if (seen.insert(k).second) out.push_back(weight_vector(m));
    });
    std::sort(out.begin(), out.end());
    return out;
}

Polynomial kameko_down(const Polynomial& f)
{
    const int t = f.arity();
    if (f.degree() < t || (f.degree() - t) % 2 != 0)
        throw std::invalid_argument("kameko_down: degree " + std::to_string(f.degree()) +
                                    " is not of the form 2n + " + std::to_string(t));
    const int n = (f.degree() - t) / 2;
    std::vector<Monomial> terms;
    for (const auto& m : f.terms()) {
        if (!m.all_exponents_odd()) continue;
        Monomial g(t);
        for (int j = 0; j < t; ++j) g.set(j, (m[j] - 1) / 2);
        terms.push_back(g);
    }
    if (terms.empty()) return Polynomial(t, n);
    return Polynomial::from_terms(t, n, std::move(terms));
}

bool singer_hit_test(const Monomial& x)
{
    const auto z = minimal_spike(x.arity(), x.degree());
    if (!z) throw std::invalid_argument("singer_hit_test: mu(" + std::to_string(x.degree()) + ") exceeds arity");
    return weight_vector(x) < weight_vector(*z);
}

bool kameko_inadmissible_test(const Monomial& x, int r, const Monomial& w, const Monomial& z,
                              const BasisReport& lower)
{
    if (r < 1) throw std::invalid_argument("kameko_inadmissible_test: r must be positive");
    if (w.arity() != x.arity() || z.arity() != x.arity())
        throw std::invalid_argument("kameko_inadmissible_test: arity mismatch");
    if (w * power(z, 1 << r) != x) throw std::invalid_argument("kameko_inadmissible_test: x != w z^(2^r)");
    for (int j = 0; j < w.arity(); ++j)
        if (w[j] >= (1 << r))
            throw std::invalid_argument("kameko_inadmissible_test: omega_i(w) must vanish for all i > r");
    if (lower.t != z.arity() || lower.n != z.degree() || lower.block || lower.part != Part::All)
        throw std::invalid_argument("kameko_inadmissible_test: lower basis does not match z");
    return !lower.contains(z);
}

Engine::Engine(EngineOptions options, ReportCache* cache) : options_(options), cache_(cache) {}

std::optional<WeightVector> Engine::singer_floor(int t, int n) const
{
    if (!options_.singer_filter || n <= 0) return std::nullopt;
    const auto z = minimal_spike(t, n);
    if (!z) return std::nullopt;
    return weight_vector(*z);
}

Strategy Engine::resolve_strategy(int t, int n) const
{
    if (options_.strategy != Strategy::Auto) return options_.strategy;
    const auto floor = singer_floor(t, n);
    std::size_t cols = 0;
    if (!floor) {
        cols = static_cast<std::size_t>(binomial(n + t - 1, t - 1));
    } else {
        for_each_composition(t, n, [&](const Monomial& m) {
            if (!(weight_vector(m) < *floor)) ++cols;
        });
    }
    return HitSpace::projected_bytes(cols) > options_.memory_limit / 2 ? Strategy::Stratified : Strategy::Monolithic;
}

std::shared_ptr<const HitSpace> Engine::hit_space(int t, int n)
{
    const auto key = std::make_pair(t, n);
    if (auto it = spaces_.find(key); it != spaces_.end()) return it->second;
    auto space = std::make_shared<const HitSpace>(t, n, singer_floor(t, n), options_);
    spaces_.emplace(key, space);
    return space;
}

BasisReport Engine::compute_monolithic(int t, int n)
{
    const auto start = Clock::now();
    auto space = hit_space(t, n);
    BasisReport r;
    r.t = t;
    r.n = n;
    r.admissibles = space->admissibles();
    r.strategy = to_string(Strategy::Monolithic);
    r.elapsed_seconds = seconds_since(start);
    return r;
}

BasisReport Engine::compute_stratified(int t, int n)
{
    const auto start = Clock::now();
    BasisReport r;
    r.t = t;
    r.n = n;
    for (const auto& omega : occurring_weights(t, n)) {
        auto block = weight_block_basis(t, n, omega);
        r.admissibles.insert(r.admissibles.end(), block.admissibles.begin(), block.admissibles.end());
    }
    sort_descending(r.admissibles);
    r.strategy = to_string(Strategy::Stratified);
    r.elapsed_seconds = seconds_since(start);
    return r;
}

BasisReport Engine::admissible_basis(int t, int n)
{
    if (t < 1 || t > kMaxArity) throw std::invalid_argument("admissible_basis: arity out of range");
    if (n < 0) throw std::invalid_argument("admissible_basis: negative degree");
    const auto key = std::make_pair(t, n);
    if (auto it = bases_.find(key); it != bases_.end()) return it->second;

    const Strategy strategy = resolve_strategy(t, n);
    if (cache_) {
        if (auto hit = cache_->load(t, n, std::nullopt, Part::All, to_string(strategy))) {
            bases_.emplace(key, *hit);
            return *hit;
        }
    }
    BasisReport r = strategy == Strategy::Monolithic ? compute_monolithic(t, n) : compute_stratified(t, n);
    if (cache_) cache_->store(r);
    bases_.emplace(key, r);
    return r;
}

BasisReport Engine::positive_part(int t, int n)
{
    return split_parts(admissible_basis(t, n)).second;
}

bool Engine::block_certified_inadmissible(int t, int n, const WeightVector& omega)
{
    // x = w z^2 with w the product of the odd-exponent variables; z then lives in degree
    // (n - omega_1) / 2 and every exponent of w is below 2.
    const int lower_degree = (n - omega.at(1)) / 2;
    if (lower_degree < 0 || lower_degree >= n) return false;
    const BasisReport lower = admissible_basis(t, lower_degree);
    bool any = false;
    bool all_certified = true;
    for_each_composition(t, n, [&](const Monomial& x) {
        if (!all_certified || weight_vector(x) != omega) return;
        any = true;
        Monomial w(t), z(t);
        for (int j = 0; j < t; ++j) {
            w.set(j, x[j] & 1);
            z.set(j, x[j] >> 1);
        }
        if (!kameko_inadmissible_test(x, 1, w, z, lower)) all_certified = false;
    });
    return any && all_certified;
}

BasisReport Engine::weight_block_basis(int t, int n, const WeightVector& omega)
{
    if (omega.degree() != n)
        throw std::invalid_argument("weight_block_basis: deg" + to_string(omega) + " != " + std::to_string(n));
    const auto start = Clock::now();
    BasisReport r;
    r.t = t;
    r.n = n;
    r.block = omega;
    r.strategy = to_string(Strategy::Stratified);

    bool skip = false;
    if (auto floor = singer_floor(t, n); floor && omega < *floor) skip = true;
    if (!skip && options_.kameko_filter && block_certified_inadmissible(t, n, omega)) skip = true;
    if (!skip) {
        bool occurs = false;
        for_each_composition(t, n, [&](const Monomial& m) {
            if (!occurs && weight_vector(m) == omega) occurs = true;
        });
        if (occurs) {
            HitSpace space(t, n, omega, options_);
            for (const auto& m : space.admissibles())
                if (weight_vector(m) == omega) r.admissibles.push_back(m);
        }
    }
    r.elapsed_seconds = seconds_since(start);
    return r;
}

BlockDecomposition Engine::block_decomposition_check(int t, int n)
{
    BlockDecomposition d;
    d.t = t;
    d.n = n;
    const BasisReport full = admissible_basis(t, n);
    d.full_dim = full.dim();
    std::vector<Monomial> assembled;
    for (const auto& omega : occurring_weights(t, n)) {
        auto block = weight_block_basis(t, n, omega);
        d.blocks.emplace_back(omega, block.dim());
        assembled.insert(assembled.end(), block.admissibles.begin(), block.admissibles.end());
    }
    std::size_t total = 0;
    for (const auto& [w, k] : d.blocks) total += k;
    sort_descending(assembled);
    d.holds = total == full.dim() && assembled == full.admissibles;
    return d;
}

KamekoVerdict Engine::kameko_check(int t, int n)
{
    KamekoVerdict v;
    v.t = t;
    v.n = n;
    const int high = 2 * n + t;
    v.mu_condition = mu(high) == t;
    const BasisReport upper = admissible_basis(t, high);
    const BasisReport lower = admissible_basis(t, n);
    v.dim_high = upper.dim();
    v.dim_low = lower.dim();
    v.dims_equal = v.dim_high == v.dim_low;
    auto space = hit_space(t, n);
    EchelonBuilder image(space->admissibles().size());
    for (const auto& x : upper.admissibles) {
        const Polynomial g = kameko_down(Polynomial(x));
        image.insert(space->coordinates(g));
    }
    v.map_rank = image.rank();
    v.bijective = v.dims_equal && v.map_rank == v.dim_low;
    return v;
}

}  // namespace hitcalc
