#pragma once

// Deterministic quasi-random directions on the unit sphere of R^{n+1}.

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace monogenic {

using Point = std::vector<double>;

namespace detail {

// Root of x^{d+1} = x + 1; its inverse powers give the R_d Kronecker sequence.
inline double generalized_golden_ratio(int d) {
  double x = 2.0;
  for (int it = 0; it < 60; ++it) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

inline double normal_quantile(double u) {
  return std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
}

}  // namespace detail

// The 2(n+1) axis points +-e_j come first, followed by `count` points of a
// randomly shifted R_d sequence pushed through the normal quantile and
// normalized. Identical (dim, count, seed) give identical output.
inline std::vector<Point> sphere_directions(int dim, int count, std::uint64_t seed) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(2 * dim + count));
  for (int j = 0; j < dim; ++j) {
    for (double s : {1.0, -1.0}) {
      Point p(static_cast<std::size_t>(dim), 0.0);
      p[static_cast<std::size_t>(j)] = s;
      out.push_back(std::move(p));
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double g = detail::generalized_golden_ratio(dim);
  std::vector<double> alpha(static_cast<std::size_t>(dim)), shift(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    alpha[static_cast<std::size_t>(j)] = std::fmod(std::pow(1.0 / g, j + 1), 1.0);
    shift[static_cast<std::size_t>(j)] = uniform(rng);
  }

  for (int i = 1; out.size() < static_cast<std::size_t>(2 * dim + count); ++i) {
    Point p(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      double u = std::fmod(shift[static_cast<std::size_t>(j)] + i * alpha[static_cast<std::size_t>(j)], 1.0);
      u = std::clamp(u, 1e-12, 1.0 - 1e-12);
      const double z = detail::normal_quantile(u);
      p[static_cast<std::size_t>(j)] = z;
      norm2 += z * z;
    }
    if (norm2 < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : p) v *= inv;
    out.push_back(std::move(p));
  }
  return out;
}

// Points uniformly distributed in the ball of radius `radius` (random direction
// and radius^(1/dim) scaling), seeded.
inline std::vector<Point> ball_points(int dim, int count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  while (out.size() < static_cast<std::size_t>(count)) {
    Point p(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    for (double& v : p) {
      v = normal(rng);
      norm2 += v * v;
    }
    if (norm2 < 1e-24) continue;
    const double scale = radius * std::pow(uniform(rng), 1.0 / dim) / std::sqrt(norm2);
    for (double& v : p) v *= scale;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace monogenic
