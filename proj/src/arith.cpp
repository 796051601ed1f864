#include "hitcalc/arith.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace hitcalc {

DyadicExpansion::DyadicExpansion(std::int64_t value) : n(value)
{
    if (value < 0) throw std::invalid_argument("DyadicExpansion: negative value");
    for (auto v = static_cast<std::uint64_t>(value); v != 0; v >>= 1)
        bits.push_back(static_cast<int>(v & 1));
}

int alpha(std::int64_t n)
{
    return std::popcount(static_cast<std::uint64_t>(n));
}

int mu(std::int64_t n)
{
    if (n <= 0) return 0;
    // alpha(n + b) <= b holds for some b <= 64 on any 64-bit input.
    for (int b = 1; b <= 64; ++b)
        if (alpha(n + b) <= b) return b;
    assert(false && "mu: search did not terminate");
    return 64;
}

std::vector<int> u_set(int t, std::int64_t n)
{
    std::vector<int> out;
    for (int rho = 0; rho < 63; ++rho) {
        const std::int64_t spike = (std::int64_t{1} << rho) - 1;
        if (spike > n) break;
        if (alpha(n - spike + t - 1) <= t - 1) out.push_back(rho);
    }
    return out;
}

std::int64_t predict_dim_inductive(int t, std::int64_t dim_lower)
{
    return ((std::int64_t{1} << t) - 1) * dim_lower;
}

std::int64_t generic_degree(std::int64_t r, int s, std::int64_t m)
{
    const std::int64_t p = std::int64_t{1} << s;
    return r * (p - 1) + m * p;
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace hitcalc
