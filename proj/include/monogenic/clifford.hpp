#pragma once

// Real Clifford algebra R_n: units e_1..e_n with e_i^2 = -1 and e_i e_j = -e_j e_i.
// A blade e_A is stored as an n-bit mask, bit (i-1) set when e_i occurs; indices
// inside a blade are always in increasing order.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace monogenic {

using BladeMask = std::uint32_t;

// Blade names use one digit per unit.
inline constexpr int kMaxDimension = 9;

struct BladeProduct {
  int sign;
  BladeMask mask;

  friend bool operator==(const BladeProduct&, const BladeProduct&) = default;
};

inline void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw DimensionError("Clifford dimension " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxDimension) + "]");
  }
}

// Sign and mask of e_A e_B. The sign collects one factor -1 per pair (i in A,
// j in B) with i > j (the transpositions needed to sort the word) and one per
// shared unit (e_i^2 = -1).
inline BladeProduct blade_product(int n, BladeMask a, BladeMask b) {
  check_dimension(n);
  const BladeMask limit = BladeMask{1} << n;
  if (a >= limit || b >= limit) {
    throw DimensionError("blade mask out of range for R_" + std::to_string(n));
  }
  int swaps = 0;
  for (BladeMask rest = a >> 1; rest != 0; rest >>= 1) swaps += std::popcount(rest & b);
  swaps += std::popcount(a & b);
  return {(swaps & 1) ? -1 : 1, a ^ b};
}

// "" for the scalar blade, otherwise the increasing unit indices, e.g. "134".
inline std::string blade_name(BladeMask mask) {
  std::string s;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) s += std::to_string(i + 1);
  }
  return s;
}

inline BladeMask parse_blade(int n, std::string_view name) {
  BladeMask mask = 0;
  int previous = 0;
  for (char c : name) {
    if (c < '1' || c > '9') throw ParseError("malformed blade '" + std::string(name) + "'");
    const int index = c - '0';
    if (index <= previous) {
      throw ParseError("blade '" + std::string(name) + "' is not strictly increasing");
    }
    if (index > n) {
      throw DimensionError("blade '" + std::string(name) + "' exceeds R_" + std::to_string(n));
    }
    mask |= BladeMask{1} << (index - 1);
    previous = index;
  }
  return mask;
}

template <Scalar T>
class CliffordNumber {
 public:
  using traits = ScalarTraits<T>;

  explicit CliffordNumber(int n) : n_(n) {
    check_dimension(n);
    coeffs_.assign(std::size_t{1} << n, traits::zero());
  }

  static CliffordNumber scalar(int n, T value) {
    CliffordNumber c(n);
    c.coeffs_[0] = std::move(value);
    return c;
  }

  static CliffordNumber blade(int n, BladeMask mask, T value = ScalarTraits<T>::one()) {
    CliffordNumber c(n);
    c.at(mask) = std::move(value);
    return c;
  }

  // e_i for 1 <= i <= n.
  static CliffordNumber unit(int n, int i) {
    if (i < 1 || i > n) throw DimensionError("unit e_" + std::to_string(i) + " not in R_" + std::to_string(n));
    return blade(n, BladeMask{1} << (i - 1));
  }

  int dimension() const { return n_; }
  std::size_t blade_count() const { return coeffs_.size(); }

  const T& operator[](BladeMask mask) const { return coeffs_.at(mask); }
  T& at(BladeMask mask) {
    if (mask >= coeffs_.size()) throw DimensionError("blade mask out of range");
    return coeffs_[mask];
  }
  std::span<const T> coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const T& c : coeffs_) {
      if (!traits::is_zero(c)) return false;
    }
    return true;
  }

  T norm2() const {
    T s = traits::zero();
    for (const T& c : coeffs_) s += c * c;
    return s;
  }

  double norm() const { return std::sqrt(traits::to_double(norm2())); }

  CliffordNumber& operator+=(const CliffordNumber& o) {
    same_dimension(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  CliffordNumber& operator-=(const CliffordNumber& o) {
    same_dimension(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  CliffordNumber& operator*=(const T& s) {
    for (T& c : coeffs_) c *= s;
    return *this;
  }

  friend CliffordNumber operator+(CliffordNumber a, const CliffordNumber& b) { return a += b; }
  friend CliffordNumber operator-(CliffordNumber a, const CliffordNumber& b) { return a -= b; }
  friend CliffordNumber operator-(CliffordNumber a) {
    for (T& c : a.coeffs_) c = -c;
    return a;
  }
  friend CliffordNumber operator*(CliffordNumber a, const T& s) { return a *= s; }
  friend CliffordNumber operator*(const T& s, CliffordNumber a) { return a *= s; }

  friend CliffordNumber operator*(const CliffordNumber& a, const CliffordNumber& b) {
    a.same_dimension(b);
    CliffordNumber out(a.n_);
    const auto size = static_cast<BladeMask>(a.coeffs_.size());
    for (BladeMask i = 0; i < size; ++i) {
      if (traits::is_zero(a.coeffs_[i])) continue;
      for (BladeMask j = 0; j < size; ++j) {
        if (traits::is_zero(b.coeffs_[j])) continue;
        const BladeProduct p = blade_product(a.n_, i, j);
        if (p.sign > 0) {
          out.coeffs_[p.mask] += a.coeffs_[i] * b.coeffs_[j];
        } else {
          out.coeffs_[p.mask] -= a.coeffs_[i] * b.coeffs_[j];
        }
      }
    }
    return out;
  }

  friend bool operator==(const CliffordNumber& a, const CliffordNumber& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  template <Scalar U>
  CliffordNumber<U> cast() const {
    CliffordNumber<U> out(n_);
    for (BladeMask k = 0; k < coeffs_.size(); ++k) {
      if constexpr (std::is_same_v<U, double>) {
        out.at(k) = traits::to_double(coeffs_[k]);
      } else {
        static_assert(std::is_same_v<T, U>, "only exact -> float or identity casts");
        out.at(k) = coeffs_[k];
      }
    }
    return out;
  }

 private:
  void same_dimension(const CliffordNumber& o) const {
    if (o.n_ != n_) {
      throw DimensionError("Clifford dimension mismatch: R_" + std::to_string(n_) + " vs R_" +
                           std::to_string(o.n_));
    }
  }

  int n_;
  std::vector<T> coeffs_;
};

// x = x0 + x1 e_1 + ... + xn e_n, a point of R^{n+1}.
template <Scalar T>
struct Paravector {
  T x0;
  std::vector<T> xv;

  int dimension() const { return static_cast<int>(xv.size()); }

  T norm2() const {
    T s = x0 * x0;
    for (const T& v : xv) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(ScalarTraits<T>::to_double(norm2())); }

  CliffordNumber<T> to_clifford() const {
    CliffordNumber<T> c(dimension());
    c.at(0) = x0;
    for (int i = 0; i < dimension(); ++i) c.at(BladeMask{1} << i) = xv[i];
    return c;
  }

  // Coordinate j of R^{n+1}, j = 0 is the real part.
  const T& coord(int j) const { return j == 0 ? x0 : xv.at(j - 1); }
  T& coord(int j) { return j == 0 ? x0 : xv.at(j - 1); }
};

template <Scalar T>
Paravector<T> make_paravector(std::span<const T> coords) {
  if (coords.size() < 2) throw DimensionError("a paravector needs n + 1 >= 2 coordinates");
  return {coords[0], std::vector<T>(coords.begin() + 1, coords.end())};
}

template <Scalar T>
CliffordNumber<T> cl_mul(const CliffordNumber<T>& a, const CliffordNumber<T>& b) {
  return a * b;
}

template <Scalar T>
double cl_norm(const CliffordNumber<T>& a) {
  return a.norm();
}

// ||x y||; left multiplication by a paravector is norm-multiplicative, so this
// equals ||x|| ||y||.
template <Scalar T>
double para_mul_norm_check(const Paravector<T>& x, const CliffordNumber<T>& y) {
  return (x.to_clifford() * y).norm();
}

}  // namespace monogenic
