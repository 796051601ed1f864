#include "hitcalc/monomial.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "hitcalc/arith.hpp"
#include "order_key.hpp"

namespace hitcalc {

namespace {

void check_arity(int arity)
{
    if (arity < 1 || arity > kMaxArity)
        throw std::invalid_argument("monomial arity must be in [1, " + std::to_string(kMaxArity) + "]");
}

void check_exponent(int value)
{
    if (value < 0 || value > 0xFFFF) throw std::invalid_argument("monomial exponent out of range");
}

}  // namespace

Monomial::Monomial(int arity)
{
    check_arity(arity);
    arity_ = static_cast<std::uint8_t>(arity);
}

Monomial::Monomial(std::initializer_list<int> exponents)
    : Monomial(std::span<const int>(exponents.begin(), exponents.size()))
{
}

Monomial::Monomial(std::span<const int> exponents)
{
    check_arity(static_cast<int>(exponents.size()));
    arity_ = static_cast<std::uint8_t>(exponents.size());
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        check_exponent(exponents[j]);
        exps_[j] = static_cast<Exponent>(exponents[j]);
    }
}

int Monomial::degree() const
{
    int d = 0;
    for (int j = 0; j < arity_; ++j) d += exps_[static_cast<std::size_t>(j)];
    return d;
}

void Monomial::set(int j, int value)
{
    if (j < 0 || j >= arity_) throw std::out_of_range("Monomial::set: variable index");
    check_exponent(value);
    exps_[static_cast<std::size_t>(j)] = static_cast<Exponent>(value);
}

std::vector<int> Monomial::exponent_vector() const
{
    return {exps_.begin(), exps_.begin() + arity_};
}

bool Monomial::has_zero_exponent() const
{
    return std::any_of(exps_.begin(), exps_.begin() + arity_, [](Exponent a) { return a == 0; });
}

bool Monomial::all_exponents_odd() const
{
    return std::all_of(exps_.begin(), exps_.begin() + arity_, [](Exponent a) { return (a & 1) != 0; });
}

std::size_t Monomial::hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL ^ arity_;
    for (int j = 0; j < arity_; ++j) {
        h ^= exps_[static_cast<std::size_t>(j)];
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

WeightVector::WeightVector(std::initializer_list<int> entries) : entries_(entries)
{
    normalize();
}

WeightVector::WeightVector(std::vector<int> entries) : entries_(std::move(entries))
{
    normalize();
}

void WeightVector::normalize()
{
    for (int e : entries_)
        if (e < 0) throw std::invalid_argument("weight vector entries must be non-negative");
    while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
}

int WeightVector::at(int i) const
{
    if (i < 1 || i > static_cast<int>(entries_.size())) return 0;
    return entries_[static_cast<std::size_t>(i - 1)];
}

std::int64_t WeightVector::degree() const
{
    std::int64_t d = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) d += (std::int64_t{1} << i) * entries_[i];
    return d;
}

bool WeightVector::weakly_decreasing() const
{
    return std::is_sorted(entries_.rbegin(), entries_.rend());
}

std::strong_ordering operator<=>(const WeightVector& a, const WeightVector& b)
{
    const std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 1; i <= len; ++i) {
        const int x = a.at(static_cast<int>(i));
        const int y = b.at(static_cast<int>(i));
        if (x != y) return x <=> y;
    }
    return std::strong_ordering::equal;
}

WeightVector weight_vector(const Monomial& x)
{
    std::vector<int> w;
    for (int j = 0; j < x.arity(); ++j) {
        unsigned a = x[j];
        for (std::size_t bit = 0; a != 0; ++bit, a >>= 1) {
            if (w.size() <= bit) w.resize(bit + 1, 0);
            w[bit] += static_cast<int>(a & 1);
        }
    }
    return WeightVector(std::move(w));
}

std::strong_ordering compare_with_weights(const Monomial& x, const WeightVector& wx,
                                          const Monomial& y, const WeightVector& wy)
{
    if (auto c = wx <=> wy; c != 0) return c;
    for (int j = 0; j < x.arity(); ++j)
        if (x[j] != y[j]) return x[j] <=> y[j];
    return std::strong_ordering::equal;
}

std::strong_ordering compare(const Monomial& x, const Monomial& y)
{
    if (x.arity() != y.arity()) throw std::invalid_argument("compare: monomials of different arity");
    if (x.degree() != y.degree()) throw std::invalid_argument("compare: monomials of different degree");
    return compare_with_weights(x, weight_vector(x), y, weight_vector(y));
}

bool is_spike(const Monomial& x)
{
    for (int j = 0; j < x.arity(); ++j) {
        const unsigned a = x[j];
        if ((a & (a + 1)) != 0) return false;
    }
    return true;
}

namespace {

// Non-increasing beta sequences with sum of (2^beta - 1) equal to `remaining`.
void search_spikes(int remaining, int max_beta, int slots, std::vector<int>& betas,
                   std::vector<std::vector<int>>& out)
{
    if (remaining == 0) {
        out.push_back(betas);
        return;
    }
    if (slots == 0) return;
    for (int beta = max_beta; beta >= 1; --beta) {
        const int e = (1 << beta) - 1;
        if (e > remaining) continue;
        betas.push_back(beta);
        search_spikes(remaining - e, beta, slots - 1, betas, out);
        betas.pop_back();
    }
}

bool minimal_pattern(const std::vector<int>& betas)
{
    // beta_1 > ... > beta_{r-1} >= beta_r >= 1
    const std::size_t r = betas.size();
    for (std::size_t i = 0; i + 2 < r; ++i)
        if (betas[i] <= betas[i + 1]) return false;
    return true;
}

}  // namespace

std::optional<Monomial> minimal_spike(int t, int n)
{
    check_arity(t);
    if (n < 0) return std::nullopt;
    if (n == 0) return Monomial(t);
    if (mu(n) > t) return std::nullopt;
    int max_beta = 0;
    while ((1 << (max_beta + 1)) - 1 <= n) ++max_beta;
    std::vector<std::vector<int>> found;
    std::vector<int> betas;
    search_spikes(n, max_beta, t, betas, found);
    const int want = mu(n);
    for (const auto& b : found) {
        if (static_cast<int>(b.size()) != want || !minimal_pattern(b)) continue;
        Monomial z(t);
        for (std::size_t j = 0; j < b.size(); ++j) z.set(static_cast<int>(j), (1 << b[j]) - 1);
        return z;
    }
    return std::nullopt;
}

std::optional<Monomial> spike_for_weight(int t, const WeightVector& omega)
{
    check_arity(t);
    if (!omega.weakly_decreasing() || omega.at(1) > t) return std::nullopt;
    if (omega.size() > 16) return std::nullopt;
    Monomial z(t);
    for (int j = 1; j <= t; ++j) {
        int c = 0;
        for (int i = 1; i <= static_cast<int>(omega.size()); ++i)
            if (omega.at(i) >= j) ++c;
        z.set(j - 1, (1 << c) - 1);
    }
    return z;
}

namespace {

void compositions(int t, int n, int pos, Monomial& cur, std::vector<Monomial>& out)
{
    if (pos == t - 1) {
        cur.set(pos, n);
        out.push_back(cur);
        return;
    }
    for (int a = n; a >= 0; --a) {
        cur.set(pos, a);
        compositions(t, n - a, pos + 1, cur, out);
    }
}

}  // namespace

std::vector<Monomial> enumerate_monomials(int t, int n)
{
    check_arity(t);
    if (n < 0) return {};
    std::vector<Monomial> all;
    all.reserve(static_cast<std::size_t>(binomial(n + t - 1, t - 1)));
    Monomial cur(t);
    compositions(t, n, 0, cur, all);
    std::vector<detail::OrderKey> keys;
    keys.reserve(all.size());
    for (const auto& m : all) keys.push_back(detail::order_key(m));
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
    std::vector<Monomial> sorted;
    sorted.reserve(all.size());
    for (auto i : idx) sorted.push_back(all[i]);
    return sorted;
}

MonomialIndexer::MonomialIndexer(int t, int n) : t_(t), n_(n)
{
    check_arity(t);
    if (n < 0) throw std::invalid_argument("MonomialIndexer: negative degree");
    const int smax = n + t;
    table_.assign(static_cast<std::size_t>((smax + 1) * (t + 1)), 0);
    for (int s = 0; s <= smax; ++s) {
        table_[static_cast<std::size_t>(s * (t + 1))] = 1;
        for (int k = 1; k <= std::min(s, t); ++k)
            table_[static_cast<std::size_t>(s * (t + 1) + k)] =
                table_[static_cast<std::size_t>((s - 1) * (t + 1) + k - 1)] +
                (k <= s - 1 ? table_[static_cast<std::size_t>((s - 1) * (t + 1) + k)] : 0);
    }
    size_ = static_cast<std::size_t>(choose(n + t - 1, t - 1));
}

std::uint64_t MonomialIndexer::choose(int s, int k) const
{
    if (k < 0 || s < 0 || k > s) return 0;
    return table_[static_cast<std::size_t>(s * (t_ + 1) + k)];
}

std::size_t MonomialIndexer::rank(const Monomial& x) const
{
    // Compositions with a smaller exponent at the first differing position come first.
    std::uint64_t r = 0;
    int s = n_;
    for (int j = 0; j + 1 < t_; ++j) {
        const int k = t_ - j;
        const int a = x[j];
        r += choose(s + k - 1, k - 1) - choose(s - a + k - 1, k - 1);
        s -= a;
    }
    return static_cast<std::size_t>(r);
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    if (a.arity() != b.arity()) throw std::invalid_argument("monomial product: arity mismatch");
    Monomial out(a.arity());
    for (int j = 0; j < a.arity(); ++j) out.set(j, a[j] + b[j]);
    return out;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b)
{
    if (a.arity() != b.arity()) throw std::invalid_argument("monomial division: arity mismatch");
    Monomial out(a.arity());
    for (int j = 0; j < a.arity(); ++j) {
        if (a[j] < b[j]) return std::nullopt;
        out.set(j, a[j] - b[j]);
    }
    return out;
}

Monomial power(const Monomial& x, int k)
{
    Monomial out(x.arity());
    for (int j = 0; j < x.arity(); ++j) out.set(j, x[j] * k);
    return out;
}

std::string to_string(const Monomial& x)
{
    std::string s;
    for (int j = 0; j < x.arity(); ++j) {
        if (x[j] == 0) continue;
        if (!s.empty()) s += ' ';
        s += 'x';
        s += std::to_string(j + 1);
        if (x[j] != 1) {
            s += '^';
            s += std::to_string(x[j]);
        }
    }
    return s.empty() ? "1" : s;
}

std::string to_string(const WeightVector& w)
{
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w.entries()[i]);
    }
    return s + ")";
}

namespace {

int parse_int(std::string_view text, std::size_t& pos)
{
    int value = 0;
    const auto* begin = text.data() + pos;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) throw std::invalid_argument("expected an integer in '" + std::string(text) + "'");
    pos += static_cast<std::size_t>(ptr - begin);
    return value;
}

void skip_space(std::string_view text, std::size_t& pos)
{
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

}  // namespace

Monomial parse_monomial(std::string_view text, int arity)
{
    Monomial x(arity);
    std::size_t pos = 0;
    skip_space(text, pos);
    if (pos < text.size() && text[pos] == '1') {
        ++pos;
        skip_space(text, pos);
        if (pos != text.size()) throw std::invalid_argument("unexpected text after '1' in monomial");
        return x;
    }
    bool any = false;
    while (true) {
        skip_space(text, pos);
        if (pos >= text.size()) break;
        if (text[pos] == '*') {
            ++pos;
            continue;
        }
        if (text[pos] != 'x') throw std::invalid_argument("expected 'x' in monomial '" + std::string(text) + "'");
        ++pos;
        const int var = parse_int(text, pos);
        if (var < 1 || var > arity)
            throw std::invalid_argument("variable x" + std::to_string(var) + " outside arity " + std::to_string(arity));
        int e = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            e = parse_int(text, pos);
        }
        x.set(var - 1, x[var - 1] + e);
        any = true;
    }
    if (!any) throw std::invalid_argument("empty monomial");
    return x;
}

WeightVector parse_weight_vector(std::string_view text)
{
    std::vector<int> entries;
    std::size_t pos = 0;
    skip_space(text, pos);
    if (pos < text.size() && text[pos] == '(') ++pos;
    while (true) {
        skip_space(text, pos);
        if (pos >= text.size() || text[pos] == ')') break;
        entries.push_back(parse_int(text, pos));
        skip_space(text, pos);
        if (pos < text.size() && text[pos] == ',') ++pos;
    }
    return WeightVector(std::move(entries));
}

}  // namespace hitcalc
