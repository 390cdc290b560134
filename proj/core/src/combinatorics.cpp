#include "lzep/combinatorics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lzep::comb {
namespace {

using Row = std::array<std::uint64_t, kExactBinomialMax + 1>;

const std::array<Row, kExactBinomialMax + 1>& pascal() {
  static const auto table = [] {
    std::array<Row, kExactBinomialMax + 1> t{};
    for (int n = 0; n <= kExactBinomialMax; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t binomial_u64(int n, int k) {
  if (n < 0 || n > kExactBinomialMax) throw std::out_of_range("binomial_u64: n out of table range");
  if (k < 0 || k > n) return 0;
  return pascal()[n][k];
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  if (n <= kPascalMax) return static_cast<double>(pascal()[n][k]);
  return std::exp(log_binomial(n, k));
}

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (n <= kPascalMax) return std::log(static_cast<double>(pascal()[n][k]));
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace lzep::comb
