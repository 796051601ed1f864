#pragma once

#include <cstdint>
#include <vector>

namespace hitcalc {

/// Binary digits of n, least significant first. No trailing zeros are stored.
struct DyadicExpansion {
    std::int64_t n = 0;
    std::vector<int> bits;

    explicit DyadicExpansion(std::int64_t value);
    int bit(int j) const { return j < static_cast<int>(bits.size()) ? bits[j] : 0; }
};

/// Number of ones in the binary expansion of n.
int alpha(std::int64_t n);

/// j-th binary digit of n.
inline int alpha_j(std::int64_t n, int j) { return static_cast<int>((n >> j) & 1); }

/// mu(0) = 0, otherwise the least b >= 1 with alpha(n + b) <= b.
int mu(std::int64_t n);

/// C(a, i) mod 2 by Lucas' theorem: odd iff the bits of i are contained in a.
inline int binom_parity(std::int64_t a, std::int64_t i)
{
    if (i < 0 || i > a) return 0;
    return (i & ~a) == 0 ? 1 : 0;
}

/// U(t, n) = { rho : 2^rho - 1 <= n and alpha(n - (2^rho - 1) + t - 1) <= t - 1 }, ascending.
std::vector<int> u_set(int t, std::int64_t n);

/// (2^t - 1) * dim_lower.
std::int64_t predict_dim_inductive(int t, std::int64_t dim_lower);

/// r(2^s - 1) + m 2^s.
std::int64_t generic_degree(std::int64_t r, int s, std::int64_t m);

/// Binomial coefficient as a 64-bit integer (no overflow checking beyond small inputs).
std::uint64_t binomial(int n, int k);

}  // namespace hitcalc
