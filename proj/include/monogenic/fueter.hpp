#pragma once

// Fueter polynomials V_m, the monogenic counterpart of the monomials x^m.
//
// With z_i = x_i - x_0 e_i, V_m is the average over all orderings of the word
// z_1^{m_1} ... z_n^{m_n}. Grouping the orderings by their last letter gives
//
//   V_m = (1/|m|) sum_{i : m_i > 0} m_i V_{m - e_i} z_i,   V_0 = 1,
//
// which is what FueterCache evaluates. This normalization is the one with
// d^p V_m(0) = delta_{pm} m!, so that f = sum V_m a_m has a_m = d^m f(0) / m!.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "clifford.hpp"
#include "multiindex.hpp"
#include "sampling.hpp"

namespace monogenic {

// How the recursion builds V_m. Grouping the symmetrized sum by its first
// letter instead of its last gives the same polynomial, so `left` reproduces
// `right` exactly. `ordered` drops the symmetrization and evaluates the plain
// word z_1^{m_1} ... z_n^{m_n}, which is not monogenic for n >= 2.
enum class FactorSide { right, left, ordered };

// z_i = x_i - x_0 e_i, axis i in 1..n.
template <Scalar T>
CliffordNumber<T> fueter_var(int axis, const Paravector<T>& x) {
  const int n = x.dimension();
  if (axis < 1 || axis > n) {
    throw DimensionError("Fueter variable z_" + std::to_string(axis) + " outside 1.." + std::to_string(n));
  }
  CliffordNumber<T> z(n);
  z.at(0) = x.xv[static_cast<std::size_t>(axis - 1)];
  z.at(BladeMask{1} << (axis - 1)) = -x.x0;
  return z;
}

// Memoized V_m(x) at one fixed point x.
template <Scalar T>
class FueterCache {
 public:
  explicit FueterCache(Paravector<T> x, FactorSide side = FactorSide::right)
      : x_(std::move(x)), side_(side) {
    const int n = x_.dimension();
    check_dimension(n);
    z_.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) z_.push_back(fueter_var(i, x_));
  }

  int dimension() const { return x_.dimension(); }
  const Paravector<T>& point() const { return x_; }

  const CliffordNumber<T>& value(const MultiIndex& m) {
    if (m.size() != dimension()) throw DimensionError("multi-index length differs from algebra dimension");
    if (auto it = memo_.find(m); it != memo_.end()) return it->second;

    const int q = m.degree();
    CliffordNumber<T> v(dimension());
    if (q == 0) {
      v.at(0) = ScalarTraits<T>::one();
    } else if (side_ == FactorSide::ordered) {
      int last = dimension();
      while (m[last - 1] == 0) --last;
      v = value(m.lowered(last)) * z_[static_cast<std::size_t>(last - 1)];
    } else {
      for (int i = 1; i <= dimension(); ++i) {
        if (m[i - 1] == 0) continue;
        const CliffordNumber<T> lower = value(m.lowered(i));
        const CliffordNumber<T>& z = z_[static_cast<std::size_t>(i - 1)];
        CliffordNumber<T> term = side_ == FactorSide::right ? lower * z : z * lower;
        v += term * ScalarTraits<T>::from_int(m[i - 1]);
      }
      v *= T(ScalarTraits<T>::one() / ScalarTraits<T>::from_int(q));
    }
    return memo_.emplace(m, std::move(v)).first->second;
  }

 private:
  Paravector<T> x_;
  FactorSide side_;
  std::vector<CliffordNumber<T>> z_;
  std::map<MultiIndex, CliffordNumber<T>> memo_;
};

template <Scalar T>
CliffordNumber<T> fueter_eval(const MultiIndex& m, const Paravector<T>& x,
                              FactorSide side = FactorSide::right) {
  FueterCache<T> cache(x, side);
  return cache.value(m);
}

struct DerivativeRule {
  long scalar;
  MultiIndex index;  // meaningful only when scalar != 0
};

// d/dx_axis V_m = m_axis V_{m - e_axis}.
inline DerivativeRule fueter_derivative_rule(const MultiIndex& m, int axis) {
  if (axis < 1 || axis > m.size()) throw DimensionError("derivative axis out of range");
  const int k = m[axis - 1];
  if (k == 0) return {0, m};
  return {k, m.lowered(axis)};
}

// Sampled max of ||V_m(x)|| over the closed unit ball. V_m is homogeneous, so
// the sphere suffices; the axis points are always included.
inline double fueter_sup_unit_ball(const MultiIndex& m, int samples, std::uint64_t seed = 1) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (m.degree() == 0) return 1.0;
  const int n = m.size();
  double best = 0.0;
  for (const Point& p : sphere_directions(n + 1, samples, seed)) {
    const Paravector<double> x = make_paravector<double>(p);
    best = std::max(best, fueter_eval(m, x).norm());
  }
  return best;
}

}  // namespace monogenic
