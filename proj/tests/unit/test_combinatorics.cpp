#include <cmath>

#include <gtest/gtest.h>

#include "lzep/combinatorics.hpp"

using namespace lzep;

TEST(Combinatorics, SmallRowsExact) {
  EXPECT_EQ(comb::binomial_u64(0, 0), 1u);
  EXPECT_EQ(comb::binomial_u64(5, 2), 10u);
  EXPECT_EQ(comb::binomial_u64(5, 6), 0u);
  EXPECT_EQ(comb::binomial_u64(5, -1), 0u);
  EXPECT_EQ(comb::binomial_u64(60, 30), 118264581564861424ull);
  EXPECT_EQ(comb::binomial_u64(67, 33), 14226520737620288370ull);
}

TEST(Combinatorics, PascalRecurrenceHoldsOverTable) {
  for (int n = 1; n <= comb::kExactBinomialMax; ++n)
    for (int k = 1; k < n; ++k)
      ASSERT_EQ(comb::binomial_u64(n, k), comb::binomial_u64(n - 1, k - 1) + comb::binomial_u64(n - 1, k));
}

TEST(Combinatorics, LogGammaBranchMatchesTableAtBoundary) {
  // binomial() switches to lgamma above n = 60; compare against the exact table.
  for (int n = 61; n <= comb::kExactBinomialMax; ++n)
    for (int k = 0; k <= n; ++k) {
      const double exact = static_cast<double>(comb::binomial_u64(n, k));
      EXPECT_NEAR(comb::binomial(n, k) / exact, 1.0, 1e-12) << n << " " << k;
    }
}

TEST(Combinatorics, LargeArgumentsStayFinite) {
  EXPECT_TRUE(std::isfinite(comb::log_binomial(2000, 1000)));
  EXPECT_NEAR(comb::log_binomial(2000, 1), std::log(2000.0), 1e-9);
  EXPECT_EQ(comb::log_binomial(3, 4), -INFINITY);
  EXPECT_THROW(comb::binomial_u64(68, 1), std::out_of_range);
}
