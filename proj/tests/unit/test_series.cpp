#include <gtest/gtest.h>

#include <random>

#include "monogenic/random.hpp"
#include "monogenic/sampling.hpp"
#include "monogenic/series.hpp"

using namespace monogenic;

namespace {

using Q = Rational;

Paravector<Q> point_on_hyperplane(int n, std::mt19937_64& rng) {
  Paravector<Q> x{Q(0), {}};
  for (int i = 0; i < n; ++i) x.xv.push_back(random_rational(rng));
  return x;
}

}  // namespace

// On x0 = 0 the CK-product is the pointwise product.
TEST(CkProduct, RestrictsToPointwiseProduct) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(2, 3, rng), g = random_series(2, 3, rng);
    const auto h = ck_mul_left(f, g);
    for (int k = 0; k < 3; ++k) {
      const auto x = point_on_hyperplane(2, rng);
      EXPECT_EQ(series_eval(h, x), series_eval(f, x) * series_eval(g, x));
    }
  }
}

TEST(CkProduct, BruteForceConvolution) {
  std::mt19937_64 rng(22);
  const int n = 2, q = 5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(n, q, rng), g = random_series(n, q, rng);
    const auto h = ck_mul_left(f, g, q);
    for (const auto& s : enumerate_up_to(n, q)) {
      CliffordNumber<Q> expected(n);
      for (const auto& m : enumerate_up_to(n, q))
        for (const auto& k : enumerate_up_to(n, q))
          if (m + k == s) expected += f.coefficient(m) * g.coefficient(k);
      EXPECT_EQ(h.coefficient(s), expected);
    }
  }
}

TEST(CkProduct, AssociativeWithUnit) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(2, 5, rng), g = random_series(2, 5, rng), h = random_series(2, 5, rng);
    EXPECT_EQ(ck_mul_left(ck_mul_left(f, g, 5), h, 5), ck_mul_left(f, ck_mul_left(g, h, 5), 5));
    EXPECT_EQ(ck_mul_left(f, MonogenicSeries<Q>::unit(2)), f);
    EXPECT_EQ(ck_mul_left(MonogenicSeries<Q>::unit(2), f), f);
  }
  EXPECT_THROW(ck_mul_left(MonogenicSeries<Q>(2, 1), MonogenicSeries<Q>(3, 1)), DimensionError);
}

TEST(Derivative, MatchesFiniteDifferences) {
  std::mt19937_64 rng(24);
  const auto f = random_series(2, 5, rng).to_float();
  const auto points = ball_points(3, 10, 1.0, 2);
  for (int axis = 1; axis <= 2; ++axis) {
    const auto d = series_derivative(f, MultiIndex::unit(2, axis));
    for (const auto& p : points) {
      Point plus = p, minus = p;
      const double h = 1e-5;
      plus[static_cast<std::size_t>(axis)] += h;
      minus[static_cast<std::size_t>(axis)] -= h;
      const auto fd = (series_eval(f, make_paravector<double>(plus)) - series_eval(f, make_paravector<double>(minus))) *
                      (1.0 / (2 * h));
      EXPECT_LE((fd - series_eval(d, make_paravector<double>(p))).norm(), 1e-6);
    }
  }
}

TEST(Derivative, ComposesAndShiftsDegree) {
  std::mt19937_64 rng(25);
  const auto f = random_series(2, 6, rng);
  const auto d21 = series_derivative(f, MultiIndex{2, 1});
  EXPECT_EQ(d21, series_derivative(series_derivative(f, MultiIndex{1, 0}), MultiIndex{1, 1}));
  EXPECT_EQ(d21.max_degree(), 3);
  EXPECT_TRUE(series_derivative(f, MultiIndex{7, 0}).is_zero());
  EXPECT_THROW(series_derivative(f, MultiIndex{1}), DimensionError);
}

TEST(Series, CanonicalDropsZerosAndTightensDegree) {
  MonogenicSeries<Q> f(2, 6);
  f.set(MultiIndex{1, 0}, CliffordNumber<Q>::scalar(2, Q(1)));
  f.set(MultiIndex{2, 0}, CliffordNumber<Q>(2));
  EXPECT_EQ(f.coefficients().size(), 1u);
  EXPECT_EQ(f.canonical().max_degree(), 1);
  EXPECT_THROW(f.set(MultiIndex{7, 0}, CliffordNumber<Q>::scalar(2, Q(1))), std::exception);
}

TEST(Series, UnitSeriesEvaluatesToOne) {
  std::mt19937_64 rng(26);
  Paravector<Q> x{random_rational(rng), {random_rational(rng), random_rational(rng)}};
  EXPECT_EQ(series_eval(MonogenicSeries<Q>::unit(2), x), CliffordNumber<Q>::scalar(2, Q(1)));
  EXPECT_THROW(series_eval(MonogenicSeries<Q>::unit(3), x), DimensionError);
}

TEST(MaxModulus, BracketIsOrdered) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_series(2, 4, rng);
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
      const ModulusBracket b = max_modulus(f, r, 128);
      EXPECT_LE(b.lower, b.upper * (1 + 1e-12));
    }
  }
  // A single scalar axis term is attained on the axis: M(r) = r^q.
  const auto v = MonogenicSeries<double>::basis(MultiIndex{3, 0}, CliffordNumber<double>::scalar(2, 1.0));
  EXPECT_NEAR(max_modulus(v, 2.0, 512).upper, 8.0, 1e-12);
  EXPECT_GT(max_modulus(v, 2.0, 512).lower, 7.0);
}

TEST(Sampling, DirectionsAreUnitAndDeterministic) {
  const auto a = sphere_directions(3, 50, 9), b = sphere_directions(3, 50, 9);
  EXPECT_EQ(a, b);
  for (const auto& p : a) {
    double s = 0;
    for (double v : p) s += v * v;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
  for (const auto& p : ball_points(3, 50, 1.5, 9)) {
    double s = 0;
    for (double v : p) s += v * v;
    EXPECT_LE(std::sqrt(s), 1.5 + 1e-12);
  }
}
