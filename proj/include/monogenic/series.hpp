#pragma once

// Degree-truncated Taylor series f(x) = sum_{|m| <= Q} V_m(x) a_m in the Fueter
// basis. Coefficients multiply V_m from the right (left-monogenic convention).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "clifford.hpp"
#include "fueter.hpp"
#include "multiindex.hpp"
#include "sampling.hpp"

namespace monogenic {

template <Scalar T>
class MonogenicSeries {
 public:
  using Coefficient = CliffordNumber<T>;
  using Table = std::map<MultiIndex, Coefficient>;

  MonogenicSeries(int n, int max_degree) : n_(n), max_degree_(max_degree) {
    check_dimension(n);
    if (max_degree < 0) throw std::invalid_argument("series degree bound must be >= 0");
  }

  // The constant series c.
  static MonogenicSeries constant(const Coefficient& c) {
    MonogenicSeries s(c.dimension(), 0);
    s.set(MultiIndex(c.dimension()), c);
    return s;
  }

  // The CK unit (constant 1).
  static MonogenicSeries unit(int n) {
    return constant(Coefficient::scalar(n, ScalarTraits<T>::one()));
  }

  // V_m a as a series.
  static MonogenicSeries basis(const MultiIndex& m, const Coefficient& a) {
    MonogenicSeries s(a.dimension(), m.degree());
    s.set(m, a);
    return s;
  }

  int dimension() const { return n_; }
  int max_degree() const { return max_degree_; }
  const Table& coefficients() const { return coeffs_; }

  // Stores a_m; exact zeros are dropped so the table stays canonical.
  void set(const MultiIndex& m, Coefficient a) {
    check_index(m);
    if (a.dimension() != n_) throw DimensionError("coefficient dimension differs from series dimension");
    if (m.degree() > max_degree_) {
      throw std::invalid_argument("index " + m.to_string() + " exceeds series degree " +
                                  std::to_string(max_degree_));
    }
    if (a.is_zero()) {
      coeffs_.erase(m);
    } else {
      coeffs_.insert_or_assign(m, std::move(a));
    }
  }

  void add(const MultiIndex& m, const Coefficient& a) {
    check_index(m);
    if (m.degree() > max_degree_) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
      if (!a.is_zero()) coeffs_.emplace(m, a);
      return;
    }
    it->second += a;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  Coefficient coefficient(const MultiIndex& m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Coefficient(n_) : it->second;
  }

  bool is_zero() const { return coeffs_.empty(); }

  // Highest |m| with a nonzero coefficient, -1 for the zero series.
  int top_degree() const {
    int d = -1;
    for (const auto& [m, a] : coeffs_) d = std::max(d, m.degree());
    return d;
  }

  MonogenicSeries truncated(int q) const {
    MonogenicSeries out(n_, std::max(0, std::min(q, max_degree_)));
    if (q < 0) return out;
    for (const auto& [m, a] : coeffs_) {
      if (m.degree() <= q) out.coeffs_.emplace(m, a);
    }
    return out;
  }

  // Restriction P_q to |m| = q.
  MonogenicSeries homogeneous_part(int q) const {
    MonogenicSeries out(n_, std::max(q, 0));
    for (const auto& [m, a] : coeffs_) {
      if (m.degree() == q) out.coeffs_.emplace(m, a);
    }
    return out;
  }

  // Same coefficients with the degree bound lowered to the top nonzero degree.
  MonogenicSeries canonical() const {
    MonogenicSeries out(n_, std::max(0, top_degree()));
    out.coeffs_ = coeffs_;
    return out;
  }

  MonogenicSeries& operator+=(const MonogenicSeries& o) {
    same_dimension(o);
    max_degree_ = std::max(max_degree_, o.max_degree_);
    for (const auto& [m, a] : o.coeffs_) add(m, a);
    return *this;
  }
  MonogenicSeries& operator-=(const MonogenicSeries& o) {
    same_dimension(o);
    max_degree_ = std::max(max_degree_, o.max_degree_);
    for (const auto& [m, a] : o.coeffs_) add(m, -a);
    return *this;
  }
  friend MonogenicSeries operator+(MonogenicSeries a, const MonogenicSeries& b) { return a += b; }
  friend MonogenicSeries operator-(MonogenicSeries a, const MonogenicSeries& b) { return a -= b; }

  // f * s (real scalar).
  MonogenicSeries scaled(const T& s) const {
    MonogenicSeries out(n_, max_degree_);
    for (const auto& [m, a] : coeffs_) out.set(m, a * s);
    return out;
  }

  // f c, a right Clifford constant: coefficients a_m c.
  MonogenicSeries right_multiplied(const Coefficient& c) const {
    MonogenicSeries out(n_, max_degree_);
    for (const auto& [m, a] : coeffs_) out.set(m, a * c);
    return out;
  }

  // Coefficients agree (degree bounds are metadata and not compared).
  friend bool operator==(const MonogenicSeries& a, const MonogenicSeries& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  MonogenicSeries<double> to_float() const {
    MonogenicSeries<double> out(n_, max_degree_);
    for (const auto& [m, a] : coeffs_) out.set(m, a.template cast<double>());
    return out;
  }

 private:
  void check_index(const MultiIndex& m) const {
    if (m.size() != n_) throw DimensionError("multi-index length differs from series dimension");
  }
  void same_dimension(const MonogenicSeries& o) const {
    if (o.n_ != n_) throw DimensionError("series dimension mismatch");
  }

  int n_;
  int max_degree_;
  Table coeffs_;
};

template <Scalar T>
CliffordNumber<T> series_eval(const MonogenicSeries<T>& f, const Paravector<T>& x,
                              FactorSide side = FactorSide::right) {
  if (x.dimension() != f.dimension()) throw DimensionError("point dimension differs from series dimension");
  FueterCache<T> cache(x, side);
  CliffordNumber<T> out(f.dimension());
  for (const auto& [m, a] : f.coefficients()) out += cache.value(m) * a;
  return out;
}

// (d^p f)_m = ((m+p)! / m!) a_{m+p}; the result has degree bound Q - |p|.
template <Scalar T>
MonogenicSeries<T> series_derivative(const MonogenicSeries<T>& f, const MultiIndex& p) {
  if (p.size() != f.dimension()) throw DimensionError("derivative index length differs from series dimension");
  const int q = f.max_degree() - p.degree();
  MonogenicSeries<T> out(f.dimension(), std::max(q, 0));
  if (q < 0) return out;
  for (const auto& [k, a] : f.coefficients()) {
    if (!p.le(k)) continue;
    const MultiIndex m = k - p;
    Rational factor(k.factorial(), m.factorial());
    factor.canonicalize();
    out.set(m, a * to_scalar<T>(factor));
  }
  return out;
}

// f (.)_L g: c_p = sum_{m+k=p} a_m b_k, truncated at |p| <= q_out.
template <Scalar T>
MonogenicSeries<T> ck_mul_left(const MonogenicSeries<T>& f, const MonogenicSeries<T>& g, int q_out) {
  if (f.dimension() != g.dimension()) throw DimensionError("CK-product of series in different dimensions");
  MonogenicSeries<T> out(f.dimension(), std::max(q_out, 0));
  if (q_out < 0) return out;
  for (const auto& [m, a] : f.coefficients()) {
    if (m.degree() > q_out) continue;
    for (const auto& [k, b] : g.coefficients()) {
      if (m.degree() + k.degree() > q_out) continue;
      out.add(m + k, a * b);
    }
  }
  return out;
}

// Untruncated CK-product.
template <Scalar T>
MonogenicSeries<T> ck_mul_left(const MonogenicSeries<T>& f, const MonogenicSeries<T>& g) {
  return ck_mul_left(f, g, f.max_degree() + g.max_degree());
}

struct DiracResidual {
  double absolute;  // max ||Df(x)|| over the points
  double relative;  // max ||Df(x)|| / (1 + scale(x))
};

// Central-difference Dirac operator D = d_0 + sum e_i d_i applied to any
// R_n-valued function of a point of R^{n+1}.
template <class Fn>
DiracResidual dirac_residual_fn(int n, Fn&& f, std::span<const Point> points, double h,
                                const std::function<double(const Point&)>& scale = {}) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  DiracResidual out{0.0, 0.0};
  for (const Point& x : points) {
    CliffordNumber<double> dirac(n);
    for (int j = 0; j <= n; ++j) {
      Point plus = x, minus = x;
      plus[static_cast<std::size_t>(j)] += h;
      minus[static_cast<std::size_t>(j)] -= h;
      CliffordNumber<double> partial = (f(plus) - f(minus)) * (1.0 / (2.0 * h));
      if (j == 0) {
        dirac += partial;
      } else {
        dirac += CliffordNumber<double>::unit(n, j) * partial;
      }
    }
    const double r = dirac.norm();
    out.absolute = std::max(out.absolute, r);
    const double s = scale ? scale(x) : 0.0;
    out.relative = std::max(out.relative, r / (1.0 + s));
  }
  return out;
}

// Scale used for the relative residual: sum ||a_m|| ||x||^{|m|}.
template <Scalar T>
double coefficient_modulus_bound(const MonogenicSeries<T>& f, double r) {
  double s = 0.0;
  for (const auto& [m, a] : f.coefficients()) s += a.norm() * std::pow(r, m.degree());
  return s;
}

template <Scalar T>
DiracResidual dirac_residual(const MonogenicSeries<T>& f, std::span<const Point> points, double h,
                             FactorSide side = FactorSide::right) {
  const MonogenicSeries<double> g = f.to_float();
  auto eval = [&](const Point& p) { return series_eval(g, make_paravector<double>(p), side); };
  auto scale = [&](const Point& p) {
    double r2 = 0.0;
    for (double v : p) r2 += v * v;
    return coefficient_modulus_bound(g, std::sqrt(r2));
  };
  return dirac_residual_fn(f.dimension(), eval, points, h, scale);
}

struct ModulusBracket {
  double lower;  // sampled max of ||f|| on the sphere, a lower bound of M(r, f)
  double upper;  // sum ||a_m|| r^{|m|}, an upper bound of M(r, f)
};

// M(r, f) = sup_{||x|| = r} ||f(x)||, bracketed.
template <Scalar T>
ModulusBracket max_modulus(const MonogenicSeries<T>& f, double r, int samples, std::uint64_t seed = 1) {
  if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
  const MonogenicSeries<double> g = f.to_float();
  ModulusBracket out{0.0, coefficient_modulus_bound(g, r)};
  if (r == 0.0) {
    out.lower = g.coefficient(MultiIndex(f.dimension())).norm();
    return out;
  }
  for (const Point& d : sphere_directions(f.dimension() + 1, samples, seed)) {
    Point p = d;
    for (double& v : p) v *= r;
    out.lower = std::max(out.lower, series_eval(g, make_paravector<double>(p)).norm());
  }
  return out;
}

}  // namespace monogenic
