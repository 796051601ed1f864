#pragma once

#include <array>
#include <cstdint>

#include "hitcalc/monomial.hpp"

namespace hitcalc::detail {

// Fixed-size image of the monomial order: 16-bit exponents give at most 16 weight
// entries, each at most kMaxArity. Lexicographic comparison of (weights, exponents)
// reproduces compare() exactly for monomials of one arity.
struct OrderKey {
    std::array<std::uint8_t, 16> weights{};
    std::array<Exponent, kMaxArity> exps{};

    friend auto operator<=>(const OrderKey&, const OrderKey&) = default;
};

inline OrderKey order_key(const Monomial& x)
{
    OrderKey k;
    for (int j = 0; j < x.arity(); ++j) {
        const unsigned a = x[j];
        k.exps[static_cast<std::size_t>(j)] = static_cast<Exponent>(a);
        for (unsigned bit = 0, v = a; v != 0; ++bit, v >>= 1)
            k.weights[bit] = static_cast<std::uint8_t>(k.weights[bit] + (v & 1));
    }
    return k;
}

}  // namespace hitcalc::detail
