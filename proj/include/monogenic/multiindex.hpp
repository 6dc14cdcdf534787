#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace monogenic {

// m = (m_1, ..., m_n) in N_0^n. Ordered lexicographically; this order is the
// canonical iteration order for coefficient tables and serialized files.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int n) : entries_(static_cast<std::size_t>(n), 0) {}
  MultiIndex(std::initializer_list<int> entries) : entries_(entries) { validate(); }
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) { validate(); }

  static MultiIndex unit(int n, int axis) {
    MultiIndex m(n);
    m.entries_.at(static_cast<std::size_t>(axis - 1)) = 1;
    return m;
  }

  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }

  int degree() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

  // Componentwise partial order.
  bool le(const MultiIndex& o) const {
    check_same(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] > o.entries_[i]) return false;
    }
    return true;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    check_same(o);
    MultiIndex r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
    return r;
  }

  // Requires o.le(*this).
  MultiIndex operator-(const MultiIndex& o) const {
    if (!o.le(*this)) throw std::invalid_argument("multi-index difference would be negative");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
    return r;
  }

  // m - e_axis, axis in 1..n; requires m_axis >= 1.
  MultiIndex lowered(int axis) const {
    MultiIndex r = *this;
    auto& e = r.entries_.at(static_cast<std::size_t>(axis - 1));
    if (e == 0) throw std::invalid_argument("cannot lower a zero entry");
    --e;
    return r;
  }

  BigInt factorial() const {
    BigInt out = 1;
    for (int e : entries_) {
      BigInt f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(e));
      out *= f;
    }
    return out;
  }

  double log_factorial() const {
    double s = 0.0;
    for (int e : entries_) s += std::lgamma(static_cast<double>(e) + 1.0);
    return s;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(entries_[i]);
    }
    return s + ")";
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  void validate() const {
    for (int e : entries_) {
      if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    }
  }
  void check_same(const MultiIndex& o) const {
    if (o.size() != size()) throw DimensionError("multi-index length mismatch");
  }

  std::vector<int> entries_;
};

namespace detail {
inline void enumerate_into(std::vector<int>& current, int pos, int remaining,
                           std::vector<MultiIndex>& out) {
  const int n = static_cast<int>(current.size());
  if (pos == n - 1) {
    current[static_cast<std::size_t>(pos)] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    current[static_cast<std::size_t>(pos)] = v;
    enumerate_into(current, pos + 1, remaining - v, out);
  }
}
}  // namespace detail

// All m with |m| = q, in lexicographic order; C(q+n-1, n-1) of them.
inline std::vector<MultiIndex> enumerate_degree(int n, int q) {
  if (n < 1) throw DimensionError("multi-index length must be >= 1");
  std::vector<MultiIndex> out;
  if (q < 0) return out;
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  detail::enumerate_into(current, 0, q, out);
  return out;
}

// All m with |m| <= q in lexicographic order.
inline std::vector<MultiIndex> enumerate_up_to(int n, int q) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= q; ++d) {
    auto layer = enumerate_degree(n, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All p with p <= m componentwise, lexicographic.
inline std::vector<MultiIndex> enumerate_below(const MultiIndex& m) {
  std::vector<MultiIndex> out;
  std::vector<int> current(static_cast<std::size_t>(m.size()), 0);
  while (true) {
    out.emplace_back(current);
    int i = m.size() - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == m[i]) {
      current[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
  }
  return out;
}

inline BigInt rising_factorial(long base, int count) {
  BigInt out = 1;
  for (int k = 0; k < count; ++k) out *= base + k;
  return out;
}

// c(n, m) = n (n+1) ... (n+|m|-1) / m!, with c(n, 0) = 1.
inline Rational c_nm(int n, const MultiIndex& m) {
  if (n < 1) throw DimensionError("c(n,m) needs n >= 1");
  Rational r(rising_factorial(n, m.degree()), m.factorial());
  r.canonicalize();
  return r;
}

inline double log_c_nm(int n, const MultiIndex& m) {
  const double q = m.degree();
  return std::lgamma(n + q) - std::lgamma(static_cast<double>(n)) - m.log_factorial();
}

// Sum of c(n, m) over |m| = q.
inline Rational degree_sum_c(int n, int q) {
  Rational s = 0;
  for (const auto& m : enumerate_degree(n, q)) s += c_nm(n, m);
  return s;
}

}  // namespace monogenic
