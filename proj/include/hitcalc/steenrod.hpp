#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hitcalc/monomial.hpp"

namespace hitcalc {

/// Homogeneous polynomial over F_2: a set of monomials of one arity and degree, kept
/// sorted in descending monomial order.
class Polynomial {
public:
    Polynomial(int arity, int degree) : arity_(arity), degree_(degree) {}
    explicit Polynomial(const Monomial& x) : arity_(x.arity()), degree_(x.degree()), terms_{x} {}
    /// Builds from a term list; repeated terms cancel in pairs. Throws on inhomogeneous input.
    static Polynomial from_terms(int arity, int degree, std::vector<Monomial> terms);

    int arity() const { return arity_; }
    int degree() const { return degree_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool contains(const Monomial& x) const;

    Polynomial& operator+=(const Polynomial& other);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    int arity_;
    int degree_;
    std::vector<Monomial> terms_;
};

/// Visits every term of Sq^i(x). Each term occurs once: the exponent increments are
/// recovered from the term itself, so no cancellation happens inside one monomial.
/// Returns false and stops early when the visitor returns false.
template <class Visitor>
bool for_each_sq_term(int i, const Monomial& x, Visitor&& visit);

Polynomial sq(int i, const Monomial& x);
Polynomial sq(int i, const Polynomial& f);

enum class SpanMode { AllSquares, GeneratorSquares };

/// Orders i used to span the hit space in degree n under the given mode, ascending.
std::vector<int> spanning_orders(int n, SpanMode mode);

/// { Sq^i(m) : i in spanning_orders(n), deg m = n - i }, zero polynomials dropped,
/// ordered by (i, source monomial index in descending monomial order).
std::vector<Polynomial> hit_spanning_set(int t, int n, SpanMode mode);

std::string to_string(const Polynomial& f);
/// Parses `x1^2 x2 + x3^3` (or `0`). Throws std::invalid_argument on malformed input or
/// inhomogeneous degree.
Polynomial parse_polynomial(std::string_view text, int arity);

// ---------------------------------------------------------------------------

namespace detail {

template <class Visitor>
bool sq_recurse(int pos, int remaining, const Monomial& x, Monomial& cur, Visitor& visit)
{
    const int t = x.arity();
    const int a = x[pos];
    if (pos == t - 1) {
        // Remaining increment must land on the last variable and be a submask of a.
        if (remaining > a || (remaining & ~a) != 0) return true;
        cur.set(pos, a + remaining);
        return visit(static_cast<const Monomial&>(cur));
    }
    // Enumerate submasks s of a with s <= remaining, largest first.
    for (int s = a;; s = (s - 1) & a) {
        if (s <= remaining) {
            cur.set(pos, a + s);
            if (!sq_recurse(pos + 1, remaining - s, x, cur, visit)) return false;
        }
        if (s == 0) break;
    }
    return true;
}

}  // namespace detail

template <class Visitor>
bool for_each_sq_term(int i, const Monomial& x, Visitor&& visit)
{
    if (i < 0) return true;
    Monomial cur = x;
    return detail::sq_recurse(0, i, x, cur, visit);
}

}  // namespace hitcalc
