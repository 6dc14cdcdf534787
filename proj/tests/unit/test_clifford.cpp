#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "monogenic/clifford.hpp"
#include "monogenic/random.hpp"

using namespace monogenic;

namespace {

// Product of two blades by rewriting the concatenated word: adjacent swaps
// flip the sign, e_i e_i = -1.
BladeProduct rewrite(BladeMask a, BladeMask b) {
  std::vector<int> word;
  for (int i = 0; i < 32; ++i)
    if (a >> i & 1u) word.push_back(i);
  for (int i = 0; i < 32; ++i)
    if (b >> i & 1u) word.push_back(i);
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      if (word[k] > word[k + 1]) {
        std::swap(word[k], word[k + 1]);
        sign = -sign;
        changed = true;
      } else if (word[k] == word[k + 1]) {
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(k), word.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        sign = -sign;
        changed = true;
        break;
      }
    }
  }
  BladeMask mask = 0;
  for (int i : word) mask |= BladeMask{1} << i;
  return {sign, mask};
}

using Q = Rational;

}  // namespace

TEST(BladeProduct, MatchesWordRewriting) {
  for (int n = 1; n <= 5; ++n) {
    const BladeMask limit = BladeMask{1} << n;
    for (BladeMask a = 0; a < limit; ++a)
      for (BladeMask b = 0; b < limit; ++b) EXPECT_EQ(blade_product(n, a, b), rewrite(a, b)) << a << " " << b;
  }
}

TEST(BladeProduct, UnitsSquareToMinusOneAndAnticommute) {
  const int n = 4;
  for (int i = 1; i <= n; ++i) {
    const auto ei = CliffordNumber<Q>::unit(n, i);
    EXPECT_EQ(ei * ei, CliffordNumber<Q>::scalar(n, Q(-1)));
    for (int j = i + 1; j <= n; ++j) {
      const auto ej = CliffordNumber<Q>::unit(n, j);
      EXPECT_EQ(ei * ej, -(ej * ei));
    }
  }
}

TEST(BladeProduct, RejectsOutOfRange) {
  EXPECT_THROW(blade_product(2, 4, 0), DimensionError);
  EXPECT_THROW(blade_product(0, 0, 0), DimensionError);
  EXPECT_THROW(blade_product(kMaxDimension + 1, 0, 0), DimensionError);
}

TEST(CliffordNumber, AssociativeAndDistributiveExactly) {
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_clifford(n, rng), b = random_clifford(n, rng), c = random_clifford(n, rng);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) * c, a * c + b * c);
    }
  }
}

TEST(CliffordNumber, ParavectorNormIsMultiplicative) {
  std::mt19937_64 rng(5);
  const int n = 3;
  for (int trial = 0; trial < 50; ++trial) {
    Paravector<Q> x{random_rational(rng), {}}, y{random_rational(rng), {}};
    for (int i = 0; i < n; ++i) {
      x.xv.push_back(random_rational(rng));
      y.xv.push_back(random_rational(rng));
    }
    EXPECT_EQ((x.to_clifford() * y.to_clifford()).norm2(), x.norm2() * y.norm2());
  }
}

TEST(CliffordNumber, DimensionMismatchThrows) {
  EXPECT_THROW(CliffordNumber<Q>(2) * CliffordNumber<Q>(3), DimensionError);
  EXPECT_THROW(CliffordNumber<Q>(2) + CliffordNumber<Q>(3), DimensionError);
}

TEST(BladeName, RoundTripsAndRejectsMalformed) {
  const int n = 5;
  for (BladeMask a = 0; a < (BladeMask{1} << n); ++a) EXPECT_EQ(parse_blade(n, blade_name(a)), a);
  EXPECT_EQ(blade_name(0b101), "13");
  EXPECT_THROW(parse_blade(n, "21"), ParseError);
  EXPECT_THROW(parse_blade(n, "11"), ParseError);
  EXPECT_THROW(parse_blade(n, "x"), ParseError);
  EXPECT_ANY_THROW(parse_blade(2, "3"));
}

TEST(CliffordNumber, FloatCastKeepsValues) {
  auto c = CliffordNumber<Q>::blade(2, 0b11, Q(3, 4));
  const auto f = c.cast<double>();
  EXPECT_DOUBLE_EQ(f[0b11], 0.75);
  EXPECT_DOUBLE_EQ(f.norm(), 0.75);
}

TEST(CliffordNumber, FreeFunctionExamples) {
  const auto e1 = CliffordNumber<Q>::unit(2, 1), e2 = CliffordNumber<Q>::unit(2, 2);
  EXPECT_EQ(cl_mul(e1, e2), CliffordNumber<Q>::blade(2, 0b11));
  EXPECT_EQ(cl_mul(CliffordNumber<Q>::scalar(2, Q(1)), e2), e2);
  EXPECT_EQ(cl_norm(CliffordNumber<Q>(2)), 0.0);
  EXPECT_NEAR(cl_norm(e1 + e2), std::sqrt(2.0), 1e-15);
  const Paravector<double> x{1.0, {2.0, -2.0}};
  EXPECT_NEAR(cl_norm(x.to_clifford()), 3.0, 1e-15);
  EXPECT_NEAR(para_mul_norm_check(Paravector<double>{1.0, {0.0, 0.0}}, e2.cast<double>()), 1.0, 1e-15);
  EXPECT_NEAR(para_mul_norm_check(Paravector<double>{0.0, {1.0, 0.0}}, e2.cast<double>()), 1.0, 1e-15);
}

TEST(CliffordNumber, ParavectorLeftMultiplicationFloat) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    Paravector<double> x{g(rng), {g(rng), g(rng), g(rng)}};
    CliffordNumber<double> y(3);
    for (BladeMask k = 0; k < 8; ++k) y.at(k) = g(rng);
    const double want = x.norm() * y.norm();
    EXPECT_NEAR(para_mul_norm_check(x, y), want, 1e-12 * want);
  }
}

TEST(BladeProduct, SmallValues) {
  EXPECT_EQ(blade_product(2, 0b11, 0b10), (BladeProduct{-1, 0b01}));
  EXPECT_EQ(blade_product(2, 0b01, 0b01), (BladeProduct{-1, 0b00}));
  EXPECT_EQ(blade_product(2, 0b00, 0b10), (BladeProduct{1, 0b10}));
}
