#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "monogenic/multiindex.hpp"

using namespace monogenic;

namespace {

long binomial(long a, long b) {
  long r = 1;
  for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST(MultiIndex, DegreeFactorialAndOrder) {
  const MultiIndex m{2, 0, 3};
  EXPECT_EQ(m.degree(), 5);
  EXPECT_EQ(m.factorial(), BigInt(12));
  EXPECT_NEAR(m.log_factorial(), std::log(12.0), 1e-14);
  EXPECT_TRUE(MultiIndex({1, 0, 3}).le(m));
  EXPECT_FALSE(MultiIndex({0, 1, 0}).le(m));
  EXPECT_EQ(m - MultiIndex({1, 0, 1}), MultiIndex({1, 0, 2}));
  EXPECT_THROW(MultiIndex({1, 0}) - MultiIndex({0, 1}), std::exception);
  EXPECT_THROW(MultiIndex({-1, 0}), std::exception);
}

TEST(MultiIndex, EnumerationCountsAndOrder) {
  for (int n = 1; n <= 4; ++n) {
    for (int q = 0; q <= 6; ++q) {
      const auto idx = enumerate_degree(n, q);
      EXPECT_EQ(static_cast<long>(idx.size()), binomial(q + n - 1, n - 1));
      EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
      EXPECT_EQ(std::set<MultiIndex>(idx.begin(), idx.end()).size(), idx.size());
      for (const auto& m : idx) EXPECT_EQ(m.degree(), q);
    }
    EXPECT_EQ(static_cast<long>(enumerate_up_to(n, 5).size()), binomial(5 + n, n));
  }
}

TEST(MultiIndex, EnumerateBelowIsTheLowerSet) {
  const MultiIndex m{2, 1};
  const auto below = enumerate_below(m);
  EXPECT_EQ(below.size(), 6u);
  for (const auto& k : below) EXPECT_TRUE(k.le(m));
}

TEST(MultiIndex, CnmIsRisingFactorialOverFactorial) {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& m : enumerate_up_to(n, 6)) {
      double rising = 1.0;
      for (int i = 0; i < m.degree(); ++i) rising *= n + i;
      const double expected = rising / std::exp(m.log_factorial());
      EXPECT_NEAR(c_nm(n, m).get_d(), expected, 1e-9 * expected);
      EXPECT_NEAR(log_c_nm(n, m), std::log(expected), 1e-12);
    }
  }
  EXPECT_EQ(c_nm(3, MultiIndex(3)), Rational(1));
}

TEST(MultiIndex, DegreeSumOfCnm) {
  for (int n = 1; n <= 3; ++n)
    for (int q = 0; q <= 6; ++q) {
      Rational s(0);
      for (const auto& m : enumerate_degree(n, q)) s += c_nm(n, m);
      EXPECT_EQ(degree_sum_c(n, q), s);
    }
}

TEST(MultiIndex, SmallValues) {
  EXPECT_EQ(c_nm(2, MultiIndex{1, 1}), Rational(6));
  EXPECT_EQ(c_nm(3, MultiIndex{2, 0, 0}), Rational(6));
  EXPECT_EQ(degree_sum_c(1, 5), Rational(1));
  EXPECT_EQ(degree_sum_c(2, 1), Rational(4));
  const auto layer = enumerate_degree(2, 2);
  ASSERT_EQ(layer.size(), 3u);
  EXPECT_EQ(layer[0], (MultiIndex{0, 2}));
  EXPECT_EQ(layer[1], (MultiIndex{1, 1}));
  EXPECT_EQ(layer[2], (MultiIndex{2, 0}));
}
