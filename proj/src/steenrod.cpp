#include "hitcalc/steenrod.hpp"

#include <algorithm>
#include <stdexcept>

#include "order_key.hpp"

namespace hitcalc {

namespace {

bool descending(const Monomial& a, const Monomial& b)
{
    return detail::order_key(a) > detail::order_key(b);
}

// Sorts descending and cancels equal pairs.
void canonicalize(std::vector<Monomial>& terms)
{
    std::vector<std::pair<detail::OrderKey, Monomial>> keyed;
    keyed.reserve(terms.size());
    for (const auto& m : terms) keyed.emplace_back(detail::order_key(m), m);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    terms.clear();
    for (std::size_t i = 0; i < keyed.size();) {
        std::size_t j = i;
        while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
        if ((j - i) % 2 == 1) terms.push_back(keyed[i].second);
        i = j;
    }
}

}  // namespace

Polynomial Polynomial::from_terms(int arity, int degree, std::vector<Monomial> terms)
{
    for (const auto& m : terms)
        if (m.arity() != arity || m.degree() != degree)
            throw std::invalid_argument("Polynomial: inhomogeneous term " + to_string(m));
    Polynomial p(arity, degree);
    canonicalize(terms);
    p.terms_ = std::move(terms);
    return p;
}

bool Polynomial::contains(const Monomial& x) const
{
    return std::binary_search(terms_.begin(), terms_.end(), x, descending);
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    if (other.is_zero()) return *this;
    if (is_zero()) {
        arity_ = other.arity_;
        degree_ = other.degree_;
        terms_ = other.terms_;
        return *this;
    }
    if (other.arity_ != arity_ || other.degree_ != degree_)
        throw std::invalid_argument("Polynomial addition: arity or degree mismatch");
    std::vector<Monomial> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(out), descending);
    terms_ = std::move(out);
    return *this;
}

Polynomial sq(int i, const Monomial& x)
{
    std::vector<Monomial> terms;
    for_each_sq_term(i, x, [&](const Monomial& m) {
        terms.push_back(m);
        return true;
    });
    return Polynomial::from_terms(x.arity(), x.degree() + i, std::move(terms));
}

Polynomial sq(int i, const Polynomial& f)
{
    Polynomial out(f.arity(), f.degree() + i);
    std::vector<Monomial> terms;
    for (const auto& m : f.terms())
        for_each_sq_term(i, m, [&](const Monomial& y) {
            terms.push_back(y);
            return true;
        });
    if (terms.empty()) return out;
    return Polynomial::from_terms(f.arity(), f.degree() + i, std::move(terms));
}

std::vector<int> spanning_orders(int n, SpanMode mode)
{
    std::vector<int> orders;
    if (mode == SpanMode::AllSquares) {
        for (int i = 1; i <= n; ++i) orders.push_back(i);
    } else {
        for (int i = 1; i <= n; i *= 2) orders.push_back(i);
    }
    return orders;
}

std::vector<Polynomial> hit_spanning_set(int t, int n, SpanMode mode)
{
    std::vector<Polynomial> out;
    for (int i : spanning_orders(n, mode)) {
        for (const auto& m : enumerate_monomials(t, n - i)) {
            auto p = sq(i, m);
            if (!p.is_zero()) out.push_back(std::move(p));
        }
    }
    return out;
}

std::string to_string(const Polynomial& f)
{
    if (f.is_zero()) return "0";
    std::string s;
    for (const auto& m : f.terms()) {
        if (!s.empty()) s += " + ";
        s += to_string(m);
    }
    return s;
}

Polynomial parse_polynomial(std::string_view text, int arity)
{
    std::vector<Monomial> terms;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t plus = text.find('+', start);
        if (plus == std::string_view::npos) plus = text.size();
        std::string_view piece = text.substr(start, plus - start);
        const auto first = piece.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos) throw std::invalid_argument("empty term in polynomial");
        piece = piece.substr(first, piece.find_last_not_of(" \t\r\n") - first + 1);
        if (piece == "0") {
            if (text.find_first_not_of(" \t\r\n0") != std::string_view::npos)
                throw std::invalid_argument("'0' mixed with other terms");
            return Polynomial(arity, 0);
        }
        terms.push_back(parse_monomial(piece, arity));
        start = plus + 1;
        if (plus == text.size()) break;
    }
    if (terms.empty()) throw std::invalid_argument("empty polynomial");
    const int degree = terms.front().degree();
    for (const auto& m : terms)
        if (m.degree() != degree) throw std::invalid_argument("inhomogeneous polynomial: " + std::string(text));
    return Polynomial::from_terms(arity, degree, std::move(terms));
}

}  // namespace hitcalc
