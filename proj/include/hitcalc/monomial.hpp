#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hitcalc {

inline constexpr int kMaxArity = 8;
using Exponent = std::uint16_t;

/// Monomial x_1^{a_1} ... x_t^{a_t} in t variables. Variables are 1-based in text and
/// 0-based in the accessors.
class Monomial {
public:
    Monomial() = default;
    /// The monomial 1 in `arity` variables.
    explicit Monomial(int arity);
    Monomial(std::initializer_list<int> exponents);
    explicit Monomial(std::span<const int> exponents);

    int arity() const { return arity_; }
    int degree() const;
    int operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }
    void set(int j, int value);

    std::span<const Exponent> exponents() const { return {exps_.data(), static_cast<std::size_t>(arity_)}; }
    std::vector<int> exponent_vector() const;

    bool has_zero_exponent() const;
    bool all_exponents_odd() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::size_t hash() const;

private:
    std::array<Exponent, kMaxArity> exps_{};
    std::uint8_t arity_ = 0;
};

/// Weight vector (omega_1, omega_2, ...), stored without trailing zeros.
class WeightVector {
public:
    WeightVector() = default;
    WeightVector(std::initializer_list<int> entries);
    explicit WeightVector(std::vector<int> entries);

    const std::vector<int>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    /// omega_i with 1-based i; zero beyond the stored length.
    int at(int i) const;
    std::int64_t degree() const;
    bool weakly_decreasing() const;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    /// Left-lexicographic order, missing entries read as zero.
    friend std::strong_ordering operator<=>(const WeightVector& a, const WeightVector& b);

private:
    void normalize();
    std::vector<int> entries_;
};

WeightVector weight_vector(const Monomial& x);

/// Order on monomials of equal arity and degree: weight vector first, then the exponent
/// vector, both left-lexicographic. Throws std::invalid_argument on mismatched operands.
std::strong_ordering compare(const Monomial& x, const Monomial& y);

/// Unchecked variant of compare for hot paths; weights must be supplied.
std::strong_ordering compare_with_weights(const Monomial& x, const WeightVector& wx,
                                          const Monomial& y, const WeightVector& wy);

bool is_spike(const Monomial& x);

/// Minimal spike of (P_t)_n, or nullopt when mu(n) > t.
std::optional<Monomial> minimal_spike(int t, int n);

/// A spike of arity t with the given weight vector, or nullopt when omega is not weakly
/// decreasing or omega_1 > t.
std::optional<Monomial> spike_for_weight(int t, const WeightVector& omega);

/// All monomials of degree n in t variables, sorted descending.
std::vector<Monomial> enumerate_monomials(int t, int n);

/// Ranks monomials of (P_t)_n onto [0, C(n+t-1, t-1)) in exponent-lexicographic order.
/// Used to map monomials to column indices without hashing.
class MonomialIndexer {
public:
    MonomialIndexer(int t, int n);
    std::size_t size() const { return size_; }
    std::size_t rank(const Monomial& x) const;
    int arity() const { return t_; }
    int degree() const { return n_; }

private:
    std::uint64_t choose(int s, int k) const;
    int t_;
    int n_;
    std::size_t size_;
    std::vector<std::uint64_t> table_;  // table_[s * (t_ + 1) + k] = C(s, k)
};

/// Product of monomials of equal arity.
Monomial operator*(const Monomial& a, const Monomial& b);
/// a / b; nullopt when b does not divide a.
std::optional<Monomial> divide(const Monomial& a, const Monomial& b);
/// x^k.
Monomial power(const Monomial& x, int k);

/// Text form `x1^31 x2^7 x3^3 x4`, `1` for the unit monomial.
std::string to_string(const Monomial& x);
/// Text form `(4,3,2,1,1)`.
std::string to_string(const WeightVector& w);
/// Parses the monomial text form. Throws std::invalid_argument.
Monomial parse_monomial(std::string_view text, int arity);
/// Parses `4,3,2,1,1` or `(4,3,2,1,1)`.
WeightVector parse_weight_vector(std::string_view text);

}  // namespace hitcalc

template <>
struct std::hash<hitcalc::Monomial> {
    std::size_t operator()(const hitcalc::Monomial& m) const noexcept { return m.hash(); }
};
