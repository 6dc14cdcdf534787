#pragma once

// Seeded random rational instances for property checks.

#include <cstdint>
#include <random>

#include "clifford.hpp"
#include "multiindex.hpp"
#include "operator.hpp"
#include "series.hpp"

namespace monogenic {

// p/q with |p| <= 9, 1 <= q <= 9.
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

// Each blade is nonzero with probability `density`.
inline CliffordNumber<Rational> random_clifford(int n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution keep(density);
  CliffordNumber<Rational> c(n);
  for (BladeMask k = 0; k < c.blade_count(); ++k) {
    if (keep(rng)) c.at(k) = random_rational(rng);
  }
  return c;
}

// Each |m| <= degree carries a coefficient with probability `density`.
inline MonogenicSeries<Rational> random_series(int n, int degree, std::mt19937_64& rng, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  MonogenicSeries<Rational> f(n, degree);
  for (const auto& m : enumerate_up_to(n, degree)) {
    if (keep(rng)) f.set(m, random_clifford(n, rng));
  }
  return f;
}

inline OperatorSymbol<Rational> random_operator(int n, int order, int coeff_degree, std::mt19937_64& rng,
                                                double density = 0.5) {
  std::bernoulli_distribution keep(density);
  OperatorSymbol<Rational> p(n);
  for (const auto& m : enumerate_up_to(n, order)) {
    if (keep(rng)) p.set(m, random_series(n, coeff_degree, rng, 0.4));
  }
  return p;
}

inline HomTable<Rational> random_hom_table(int n, int degree, int coeff_degree, std::mt19937_64& rng) {
  HomTable<Rational> h(n, degree);
  for (const auto& p : enumerate_up_to(n, degree)) h.set(p, random_series(n, coeff_degree, rng, 0.4).canonical());
  return h;
}

}  // namespace monogenic
