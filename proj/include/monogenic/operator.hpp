#pragma once

// Formal differential operators of infinite order P = sum_m u_m (.)_L d^m with
// monogenic coefficient series u_m, their tables of values on the Fueter basis
// b_p = P(V_p) / p!, and class certificates for the bounds
//   ||u_m||_{rho2,sigma} <= C (G_{rho1,|m|} / m!) lambda^{|m|}.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "growth.hpp"
#include "multiindex.hpp"
#include "series.hpp"

namespace monogenic {

template <Scalar T>
class OperatorSymbol {
 public:
  using Table = std::map<MultiIndex, MonogenicSeries<T>>;

  explicit OperatorSymbol(int n) : n_(n) { check_dimension(n); }

  static OperatorSymbol identity(int n) {
    OperatorSymbol p(n);
    p.set(MultiIndex(n), MonogenicSeries<T>::unit(n));
    return p;
  }

  int dimension() const { return n_; }
  const Table& entries() const { return table_; }

  // Zero coefficient series are not stored.
  void set(const MultiIndex& m, MonogenicSeries<T> u) {
    if (m.size() != n_ || u.dimension() != n_) throw DimensionError("operator entry dimension mismatch");
    if (u.is_zero()) {
      table_.erase(m);
    } else {
      table_.insert_or_assign(m, std::move(u));
    }
  }

  MonogenicSeries<T> coefficient(const MultiIndex& m) const {
    auto it = table_.find(m);
    return it == table_.end() ? MonogenicSeries<T>(n_, 0) : it->second;
  }

  // Highest |m| with u_m != 0, -1 for the zero operator.
  int order() const {
    int d = -1;
    for (const auto& [m, u] : table_) d = std::max(d, m.degree());
    return d;
  }

  OperatorSymbol<double> to_float() const {
    OperatorSymbol<double> out(n_);
    for (const auto& [m, u] : table_) out.set(m, u.to_float());
    return out;
  }

  friend bool operator==(const OperatorSymbol& a, const OperatorSymbol& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  int n_;
  Table table_;
};

// b_p for every |p| <= degree; zero entries are kept so completeness is explicit.
template <Scalar T>
class HomTable {
 public:
  using Table = std::map<MultiIndex, MonogenicSeries<T>>;

  HomTable(int n, int degree) : n_(n), degree_(degree) {
    check_dimension(n);
    if (degree < 0) throw std::invalid_argument("homomorphism table degree must be >= 0");
  }

  int dimension() const { return n_; }
  int degree() const { return degree_; }
  const Table& entries() const { return table_; }

  void set(const MultiIndex& p, MonogenicSeries<T> b) {
    if (p.size() != n_ || b.dimension() != n_) throw DimensionError("table entry dimension mismatch");
    if (p.degree() > degree_) throw std::invalid_argument("table index " + p.to_string() + " exceeds degree bound");
    table_.insert_or_assign(p, std::move(b));
  }

  const MonogenicSeries<T>& at(const MultiIndex& p) const {
    auto it = table_.find(p);
    if (it == table_.end()) throw IncompleteTable("table has no entry for " + p.to_string());
    return it->second;
  }

  void check_complete() const {
    for (const auto& p : enumerate_up_to(n_, degree_)) {
      if (!table_.contains(p)) throw IncompleteTable("table has no entry for " + p.to_string());
    }
  }

  friend bool operator==(const HomTable& a, const HomTable& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.table_ == b.table_;
  }

 private:
  int n_;
  int degree_;
  Table table_;
};

// Pf = sum_m u_m (.)_L d^m f, truncated at q_out.
template <Scalar T>
MonogenicSeries<T> op_apply(const OperatorSymbol<T>& p, const MonogenicSeries<T>& f, int q_out) {
  if (p.dimension() != f.dimension()) throw DimensionError("operator and series dimensions differ");
  MonogenicSeries<T> out(f.dimension(), std::max(q_out, 0));
  const int top = f.top_degree();
  for (const auto& [m, u] : p.entries()) {
    if (m.degree() > top) continue;
    out += ck_mul_left(u, series_derivative(f, m), q_out);
  }
  return out;
}

namespace detail {

// V_k * s / k! as a series.
template <Scalar T>
MonogenicSeries<T> scaled_fueter(const MultiIndex& k, bool alternate) {
  Rational c(BigInt(1), k.factorial());
  if (alternate && (k.degree() % 2 == 1)) c = -c;
  return MonogenicSeries<T>::basis(k, CliffordNumber<T>::scalar(k.size(), to_scalar<T>(c)));
}

}  // namespace detail

// b_p = sum_{m <= p} u_m (.)_L V_{p-m} / (p-m)!, for |p| <= degree.
template <Scalar T>
HomTable<T> op_to_hom(const OperatorSymbol<T>& p, int degree) {
  const int n = p.dimension();
  HomTable<T> h(n, degree);
  for (const auto& idx : enumerate_up_to(n, degree)) {
    MonogenicSeries<T> b(n, 0);
    for (const auto& [m, u] : p.entries()) {
      if (!m.le(idx)) continue;
      b += ck_mul_left(u, detail::scaled_fueter<T>(idx - m, false));
    }
    h.set(idx, b.canonical());
  }
  return h;
}

namespace detail {

template <Scalar T>
OperatorSymbol<T> hom_to_op_signed(const HomTable<T>& h, bool alternate) {
  h.check_complete();
  const int n = h.dimension();
  OperatorSymbol<T> out(n);
  for (const auto& m : enumerate_up_to(n, h.degree())) {
    MonogenicSeries<T> u(n, 0);
    for (const auto& p : enumerate_below(m)) {
      u += ck_mul_left(h.at(p), scaled_fueter<T>(m - p, alternate));
    }
    out.set(m, u.canonical());
  }
  return out;
}

}  // namespace detail

// u_m = sum_{p <= m} b_p (.)_L V_{m-p}(-x) / (m-p)!, for |m| <= degree.
template <Scalar T>
OperatorSymbol<T> hom_to_op(const HomTable<T>& h) {
  return detail::hom_to_op_signed(h, true);
}

template <Scalar T>
using BlackBox = std::function<MonogenicSeries<T>(const MonogenicSeries<T>&)>;

enum class Denominator {
  s_factorial,  // b_s = F(V_s) / s!, consistent with hom_to_op
  m_factorial,  // u_m = sum F(V_s) V_{m-s}(-x) / ((m-s)! m!)
};

// The operator agreeing with a right-linear map F on all polynomials of
// degree <= degree.
template <Scalar T>
OperatorSymbol<T> reconstruct_from_blackbox(const BlackBox<T>& f, int n, int degree,
                                            Denominator denominator = Denominator::s_factorial) {
  const auto one = CliffordNumber<T>::scalar(n, ScalarTraits<T>::one());
  if (denominator == Denominator::s_factorial) {
    HomTable<T> h(n, degree);
    for (const auto& s : enumerate_up_to(n, degree)) {
      const T inv = to_scalar<T>(Rational(BigInt(1), s.factorial()));
      h.set(s, f(MonogenicSeries<T>::basis(s, one)).scaled(inv).canonical());
    }
    return hom_to_op(h);
  }
  std::map<MultiIndex, MonogenicSeries<T>> images;
  for (const auto& s : enumerate_up_to(n, degree)) images.emplace(s, f(MonogenicSeries<T>::basis(s, one)));
  OperatorSymbol<T> out(n);
  for (const auto& m : enumerate_up_to(n, degree)) {
    MonogenicSeries<T> u(n, 0);
    const T inv_m = to_scalar<T>(Rational(BigInt(1), m.factorial()));
    for (const auto& s : enumerate_below(m)) {
      u += ck_mul_left(images.at(s), detail::scaled_fueter<T>(m - s, true)).scaled(inv_m);
    }
    out.set(m, u.canonical());
  }
  return out;
}

// max over |s| <= degree of max_m ||(P V_s)_m - (F V_s)_m||; 0 means agreement.
template <Scalar T>
double polynomial_disagreement(const OperatorSymbol<T>& p, const BlackBox<T>& f, int degree, int q_out) {
  const int n = p.dimension();
  const auto one = CliffordNumber<T>::scalar(n, ScalarTraits<T>::one());
  double worst = 0.0;
  for (const auto& s : enumerate_up_to(n, degree)) {
    const MonogenicSeries<T> vs = MonogenicSeries<T>::basis(s, one);
    const MonogenicSeries<T> diff = op_apply(p, vs, q_out) - f(vs).truncated(q_out);
    for (const auto& [m, a] : diff.coefficients()) worst = std::max(worst, a.norm());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Class certificates.

struct ClassCell {
  double lambda;
  double sigma;
  bool finite;   // a stable finite C exists over the horizon
  double log_c;  // ln of the smallest C over the horizon (when finite)
};

struct ClassCertificate {
  std::vector<double> lambdas;
  std::vector<double> sigmas;
  int horizon = 0;
  std::vector<ClassCell> cells;  // lambda-major
  bool every_lambda = false;           // for every lambda some sigma works
  bool every_sigma = false;           // for every sigma some lambda works

  const ClassCell& cell(std::size_t li, std::size_t si) const { return cells.at(li * sigmas.size() + si); }
};

// ell_q = max_{|m| = q} ln(||u_m||_{rho2,sigma} m! / (G_{rho1,|m|} lambda^{|m|})) over
// q = 0..horizon. A finite table always admits some C; the family counts as
// bounded when the last third of the horizon never exceeds the maximum over
// the first two thirds, i.e. the witness C has stabilized.
inline ClassCell class_cell(const std::map<int, double>& log_ratio_by_degree, double lambda, double sigma,
                            int horizon, double tol = 1e-9) {
  const int split = horizon - horizon / 3;
  double head = kNegInf, tail = kNegInf;
  for (const auto& [q, v] : log_ratio_by_degree) {
    if (q > horizon) continue;
    const double ell = v - q * std::log(lambda);
    if (q < split || horizon == 0) {
      head = std::max(head, ell);
    } else {
      tail = std::max(tail, ell);
    }
  }
  ClassCell c{lambda, sigma, false, std::max(head, tail)};
  c.finite = tail == kNegInf || (head != kNegInf && tail <= head + tol);
  return c;
}

// Grid certificate for u_m against po1 (in G) and po2 (in the weighted norm).
// horizon defaults to 3 (order + 1): a table read as a finite-order operator.
// Pass the table's top degree instead to treat it as the truncation of an
// infinite family. Requires r^{rho1(r)} = O(r^{rho2(r)}).
template <Scalar T>
ClassCertificate op_class_check(const OperatorSymbol<T>& p, const ProximateOrder& po1, const ProximateOrder& po2,
                                const std::vector<double>& sigma_grid, const std::vector<double>& lambda_grid,
                                std::optional<int> horizon = {}) {
  if (!scale_dominated(po1, po2)) {
    throw InvariantViolation("class check needs r^rho1(r) = O(r^rho2(r)) for " + po1.describe() + " and " +
                             po2.describe());
  }
  if (sigma_grid.empty() || lambda_grid.empty()) throw std::invalid_argument("class check needs non-empty grids");
  ClassCertificate cert{lambda_grid, sigma_grid, horizon.value_or(3 * (p.order() + 1)), {}, false, false};

  std::vector<std::map<int, double>> by_sigma(sigma_grid.size());
  for (std::size_t si = 0; si < sigma_grid.size(); ++si) {
    for (const auto& [m, u] : p.entries()) {
      const int q = m.degree();
      if (q > cert.horizon) continue;
      const double ln_norm = log_weighted_sup(log_degree_norms(u), po2, sigma_grid[si]).value;
      const double v = ln_norm + m.log_factorial() - po1.log_g(q);
      auto [it, inserted] = by_sigma[si].emplace(q, v);
      if (!inserted) it->second = std::max(it->second, v);
    }
  }
  for (double lambda : lambda_grid) {
    for (std::size_t si = 0; si < sigma_grid.size(); ++si) {
      cert.cells.push_back(class_cell(by_sigma[si], lambda, sigma_grid[si], cert.horizon));
    }
  }
  cert.every_lambda = true;
  for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
    bool any = false;
    for (std::size_t si = 0; si < sigma_grid.size(); ++si) any = any || cert.cell(li, si).finite;
    cert.every_lambda = cert.every_lambda && any;
  }
  cert.every_sigma = true;
  for (std::size_t si = 0; si < sigma_grid.size(); ++si) {
    bool any = false;
    for (std::size_t li = 0; li < lambda_grid.size(); ++li) any = any || cert.cell(li, si).finite;
    cert.every_sigma = cert.every_sigma && any;
  }
  return cert;
}

// u_m = (G_{rho1,|m|} / m!) lambda0^{|m|} (scalar), |m| <= q_max.
inline OperatorSymbol<double> geometric_class_operator(int n, const ProximateOrder& po1, double lambda0, int q_max) {
  OperatorSymbol<double> p(n);
  for (const auto& m : enumerate_up_to(n, q_max)) {
    const double ln = po1.log_g(m.degree()) - m.log_factorial() + m.degree() * std::log(lambda0);
    p.set(m, MonogenicSeries<double>::constant(CliffordNumber<double>::scalar(n, std::exp(ln))));
  }
  return p;
}

// C(n) = max over 1 <= |m| <= q_max of c(n,m)^{1/|m|}.
inline double c_n_constant(int n, int q_max) {
  double best = 0.0;
  for (int q = 1; q <= q_max; ++q) {
    for (const auto& m : enumerate_degree(n, q)) best = std::max(best, log_c_nm(n, m) / q);
  }
  return std::exp(best);
}

struct TailSurrogate {
  double epsilon;
  double epsilon_threshold;  // 1 / (C(n) (2 k tau)^{1/rho1})
  double k;                  // 2^{rho1}
  double log_c_eps;          // certificate constant at lambda = epsilon
  std::vector<double> log_tail;  // ln T(M), M = 0..q_max-1
  double sigma_weight_rho1;  // (1+eta)(n+delta+1)^{rho1} (sigma + k tau)
  double sigma_weight_rho2;  // (1+eta)(n+delta+1)^{rho2} (sigma + k tau)

  // min over M in [m0, q_max-2] of T(M)/T(M+1).
  double min_ratio(int m0) const {
    double worst = std::numeric_limits<double>::infinity();
    for (int m = m0; m + 1 < static_cast<int>(log_tail.size()); ++m) {
      worst = std::min(worst, std::exp(log_tail[static_cast<std::size_t>(m)] - log_tail[static_cast<std::size_t>(m + 1)]));
    }
    return worst;
  }
};

// epsilon = epsilon_factor * threshold. The tail sum_{|m| > M} ||u_m||_{rho2,sigma} ||d^m f||_{rho1,k tau} of Pf,
// each factor replaced by its bound: the class bound C_eps (G_{|m|}/m!) eps^{|m|}
// and (1/m!) ||d^m f|| <= ||f||_{rho1,tau} (2 k c(n,m)^{rho1/q} tau)^{q/rho1} / G_q.
// The G_q and m! cancel, leaving C_eps ||f|| eps^q (2 k tau)^{q/rho1} sum c(n,m).
template <Scalar T>
TailSurrogate tail_convergence(const OperatorSymbol<T>& p, const ProximateOrder& po1, const ProximateOrder& po2,
                               double sigma, double tau, double log_f_norm, double epsilon_factor, int q_max,
                               double delta = 1.0, double eta = 0.1) {
  const int n = p.dimension();
  const double rho1 = po1.rho();
  TailSurrogate out{};
  out.k = std::pow(2.0, rho1);
  out.epsilon_threshold = 1.0 / (c_n_constant(n, q_max) * std::pow(2.0 * out.k * tau, 1.0 / rho1));
  out.epsilon = epsilon_factor * out.epsilon_threshold;
  const double epsilon = out.epsilon;
  const ClassCertificate cert = op_class_check(p, po1, po2, {sigma}, {epsilon}, q_max);
  if (!cert.cells.front().finite) {
    throw InvariantViolation("operator is not bounded at lambda = epsilon on the horizon");
  }
  out.log_c_eps = cert.cells.front().log_c;
  const double base = n + delta + 1.0;
  out.sigma_weight_rho1 = (1.0 + eta) * std::pow(base, rho1) * (sigma + out.k * tau);
  out.sigma_weight_rho2 = (1.0 + eta) * std::pow(base, po2.rho()) * (sigma + out.k * tau);

  std::vector<double> log_term(static_cast<std::size_t>(q_max + 1), kNegInf);
  for (int q = 1; q <= q_max; ++q) {
    const double lsum = std::log(degree_sum_c(n, q).get_d());
    log_term[static_cast<std::size_t>(q)] =
        out.log_c_eps + log_f_norm + q * std::log(epsilon) + (q / rho1) * std::log(2.0 * out.k * tau) + lsum;
  }
  out.log_tail.assign(static_cast<std::size_t>(q_max), kNegInf);
  double acc = kNegInf;
  for (int m = q_max - 1; m >= 0; --m) {
    acc = log_sum_exp(acc, log_term[static_cast<std::size_t>(m + 1)]);
    out.log_tail[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

}  // namespace monogenic
