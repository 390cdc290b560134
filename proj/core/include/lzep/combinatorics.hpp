#pragma once

#include <cstdint>

namespace lzep::comb {

/// Largest n for which binomial_u64 is exact for every k.
inline constexpr int kExactBinomialMax = 67;
/// Largest n served from the exact Pascal table by binomial().
inline constexpr int kPascalMax = 60;

/// Exact C(n, k) from a precomputed Pascal triangle; 0 when k < 0 or k > n.
/// Requires 0 <= n <= kExactBinomialMax.
std::uint64_t binomial_u64(int n, int k);

/// C(n, k) as double: Pascal table for n <= kPascalMax, log-gamma beyond.
double binomial(int n, int k);

/// ln C(n, k) via lgamma; -inf when the coefficient vanishes.
double log_binomial(int n, int k);

double log_factorial(int n);

}  // namespace lzep::comb
