#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "monogenic/fueter.hpp"
#include "monogenic/random.hpp"
#include "monogenic/sampling.hpp"
#include "monogenic/series.hpp"

using namespace monogenic;

namespace {

using Q = Rational;
using Exponent = std::vector<int>;  // powers of x0..xn

// Clifford-valued polynomial in x0..xn, exact.
struct Poly {
  int n;
  std::map<Exponent, CliffordNumber<Q>> terms;

  explicit Poly(int n_) : n(n_) {}

  static Poly one(int n) {
    Poly p(n);
    p.terms.emplace(Exponent(n + 1, 0), CliffordNumber<Q>::scalar(n, Q(1)));
    return p;
  }

  void add(const Exponent& e, const CliffordNumber<Q>& c) {
    auto [it, ins] = terms.emplace(e, c);
    if (!ins) it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  // p * z_i with z_i = x_i - x0 e_i.
  Poly times_z(int i) const {
    Poly out(n);
    const auto ei = CliffordNumber<Q>::unit(n, i);
    for (const auto& [e, c] : terms) {
      Exponent ex = e;
      ex[static_cast<std::size_t>(i)] += 1;
      out.add(ex, c);
      Exponent e0 = e;
      e0[0] += 1;
      out.add(e0, -(c * ei));
    }
    return out;
  }

  Poly scaled(const Q& s) const {
    Poly out(n);
    for (const auto& [e, c] : terms) out.add(e, c * s);
    return out;
  }

  Poly operator+(const Poly& o) const {
    Poly out = *this;
    for (const auto& [e, c] : o.terms) out.add(e, c);
    return out;
  }

  Poly partial(int j) const {
    Poly out(n);
    for (const auto& [e, c] : terms) {
      const int k = e[static_cast<std::size_t>(j)];
      if (k == 0) continue;
      Exponent ex = e;
      ex[static_cast<std::size_t>(j)] -= 1;
      out.add(ex, c * Q(k));
    }
    return out;
  }

  // D p = d_0 p + sum e_i d_i p.
  Poly dirac() const {
    Poly out = partial(0);
    for (int i = 1; i <= n; ++i) {
      const auto ei = CliffordNumber<Q>::unit(n, i);
      for (const auto& [e, c] : partial(i).terms) out.add(e, ei * c);
    }
    return out;
  }

  CliffordNumber<Q> eval(const Paravector<Q>& x) const {
    CliffordNumber<Q> out(n);
    for (const auto& [e, c] : terms) {
      Q w(1);
      for (int j = 0; j <= n; ++j)
        for (int k = 0; k < e[static_cast<std::size_t>(j)]; ++k) w *= x.coord(j);
      out += c * w;
    }
    return out;
  }
};

// V_m = (m! / |m|!) * sum over distinct arrangements of the word with m_i
// copies of z_i.
Poly fueter_oracle(const MultiIndex& m) {
  const int n = m.size();
  std::vector<int> word;
  for (int i = 1; i <= n; ++i)
    for (int k = 0; k < m[i - 1]; ++k) word.push_back(i);
  Poly sum(n);
  do {
    Poly p = Poly::one(n);
    for (int i : word) p = p.times_z(i);
    sum = sum + p;
  } while (std::next_permutation(word.begin(), word.end()));
  BigInt qf = 1;
  for (int k = 2; k <= m.degree(); ++k) qf *= k;
  Q w(m.factorial(), qf);
  w.canonicalize();
  return sum.scaled(w);
}

Paravector<Q> random_point(int n, std::mt19937_64& rng) {
  Paravector<Q> x{random_rational(rng), {}};
  for (int i = 0; i < n; ++i) x.xv.push_back(random_rational(rng));
  return x;
}

}  // namespace

TEST(Fueter, RecursionMatchesSymmetrizedProduct) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& m : enumerate_up_to(n, n == 3 ? 4 : 5)) {
      const Poly oracle = fueter_oracle(m);
      for (int t = 0; t < 3; ++t) {
        const auto x = random_point(n, rng);
        EXPECT_EQ(fueter_eval(m, x), oracle.eval(x)) << m.to_string();
      }
    }
  }
}

TEST(Fueter, LeftRecursionEqualsRightRecursion) {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 3; ++n)
    for (const auto& m : enumerate_up_to(n, 5)) {
      const auto x = random_point(n, rng);
      EXPECT_EQ(fueter_eval(m, x, FactorSide::left), fueter_eval(m, x, FactorSide::right)) << m.to_string();
    }
}

TEST(Fueter, OracleIsExactlyMonogenic) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_up_to(n, 4)) EXPECT_TRUE(fueter_oracle(m).dirac().terms.empty()) << m.to_string();
}

TEST(Fueter, OrderedWordIsNotMonogenic) {
  Poly p = Poly::one(2).times_z(1).times_z(2);
  EXPECT_FALSE(p.dirac().terms.empty());
}

// d^p V_m (0) = delta_pm m!: the coefficient of x^p (no x0) times p!.
TEST(Fueter, NormalizationAtOrigin) {
  const int n = 2;
  for (const auto& m : enumerate_up_to(n, 6)) {
    const Poly v = fueter_oracle(m);
    for (const auto& p : enumerate_up_to(n, 6)) {
      Exponent e{0};
      for (int i = 0; i < n; ++i) e.push_back(p[i]);
      auto it = v.terms.find(e);
      const CliffordNumber<Q> coeff = it == v.terms.end() ? CliffordNumber<Q>(n) : it->second;
      const auto expected = p == m ? CliffordNumber<Q>::scalar(n, Q(m.factorial())) : CliffordNumber<Q>(n);
      EXPECT_EQ(coeff * Q(p.factorial()), expected) << m.to_string() << " " << p.to_string();
    }
  }
}

TEST(Fueter, DerivativeRule) {
  const int n = 3;
  for (const auto& m : enumerate_up_to(n, 4)) {
    const Poly v = fueter_oracle(m);
    for (int axis = 1; axis <= n; ++axis) {
      const DerivativeRule rule = fueter_derivative_rule(m, axis);
      const Poly lhs = v.partial(axis);
      if (rule.scalar == 0) {
        EXPECT_TRUE(lhs.terms.empty());
      } else {
        const Poly rhs = fueter_oracle(rule.index).scaled(Q(rule.scalar));
        EXPECT_EQ(lhs.terms, rhs.terms) << m.to_string() << " axis " << axis;
      }
    }
  }
  EXPECT_THROW(fueter_derivative_rule(MultiIndex{1, 0}, 3), DimensionError);
}

TEST(Fueter, FiniteDifferenceDiracResidual) {
  const auto points = ball_points(4, 20, 1.5, 4);
  for (const auto& m : enumerate_up_to(3, 6)) {
    const auto f = MonogenicSeries<double>::basis(m, CliffordNumber<double>::scalar(3, 1.0));
    EXPECT_LE(dirac_residual(f, points, 1e-5).relative, 1e-6) << m.to_string();
  }
  const auto g = MonogenicSeries<double>::basis(MultiIndex{1, 1, 0}, CliffordNumber<double>::scalar(3, 1.0));
  EXPECT_GT(dirac_residual(g, points, 1e-5, FactorSide::ordered).relative, 1e-2);
}

TEST(Fueter, ValueOnRealAxisSubspaceIsMonomial) {
  // At x0 = 0 every z_i is the real x_i.
  std::mt19937_64 rng(13);
  for (const auto& m : enumerate_up_to(2, 6)) {
    auto x = random_point(2, rng);
    x.x0 = Q(0);
    Q w(1);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < m[i]; ++k) w *= x.xv[static_cast<std::size_t>(i)];
    EXPECT_EQ(fueter_eval(m, x), CliffordNumber<Q>::scalar(2, w));
  }
}

TEST(Fueter, UnitBallSupIsAtLeastAxisValue) {
  for (const auto& m : enumerate_up_to(2, 4)) {
    const double sup = fueter_sup_unit_ball(m, 200);
    EXPECT_GT(sup, 0.0);
    EXPECT_LE(sup, 1.0 + 1e-12);  // |V_m(x)| <= |x|^{|m|}
  }
}
