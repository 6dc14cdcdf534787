#pragma once

// Growth scales for entire monogenic functions: proximate orders and their
// normalization, the inverse phi of t = r^{rho^(r)}, the scale G_q, weighted
// norms ||f||_{rho,sigma}, K_q, and coefficient/K_q based order and type
// estimators. Every magnitude that can reach q^{q/rho} is carried as a logarithm.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "multiindex.hpp"
#include "series.hpp"

namespace monogenic {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

enum class ProximateFamily { constant, logshift, loglog };

inline std::string family_name(ProximateFamily f) {
  switch (f) {
    case ProximateFamily::constant: return "constant";
    case ProximateFamily::logshift: return "logshift";
    case ProximateFamily::loglog: return "loglog";
  }
  return "?";
}

inline ProximateFamily parse_family(const std::string& s) {
  if (s == "constant") return ProximateFamily::constant;
  if (s == "logshift") return ProximateFamily::logshift;
  if (s == "loglog") return ProximateFamily::loglog;
  throw ParseError("unknown proximate-order family '" + s + "'");
}

// A proximate order rho(r) -> rho together with its normalization rho^(r).
//
// Work is done in log-log coordinates u = ln r, s(u) = ln t(r) with
// t(r) = r^{rho^(r)}:
//   constant:  s(u) = rho u
//   logshift:  s(u) = rho u + a              (rho(r) = rho + a / ln r)
//   loglog:    s(u) = rho u + a ln u         (rho(r) = rho + a ln ln r / ln r)
// for u >= u1 (the cutover, u1 = ln r1). On [0, u1] the normalization is the
// monotone cubic Hermite interpolant from (0, 0, slope rho) to the formula's
// value and slope at u1; for u <= 0 it is rho u. Hence t is a strictly
// increasing C^1 bijection of (0, inf) with t(1) = 1 and t(0+) = 0.
class ProximateOrder {
 public:
  static ProximateOrder constant(double rho) { return ProximateOrder(ProximateFamily::constant, rho, 0.0, {}); }
  static ProximateOrder logshift(double rho, double a, std::optional<double> cutover_radius = {}) {
    return ProximateOrder(ProximateFamily::logshift, rho, a, cutover_radius);
  }
  static ProximateOrder loglog(double rho, double a, std::optional<double> cutover_radius = {}) {
    return ProximateOrder(ProximateFamily::loglog, rho, a, cutover_radius);
  }
  static ProximateOrder make(ProximateFamily family, double rho, double a,
                             std::optional<double> cutover_radius = {}) {
    return ProximateOrder(family, rho, a, cutover_radius);
  }

  ProximateFamily family() const { return family_; }
  double rho() const { return rho_; }
  double a() const { return a_; }
  double cutover_radius() const { return std::exp(u1_); }

  std::string describe() const {
    std::ostringstream os;
    os << family_name(family_) << ":" << rho_;
    if (family_ != ProximateFamily::constant) os << ":" << a_;
    return os.str();
  }

  // s(u) = ln t(e^u).
  double log_scale(double u) const {
    if (family_ == ProximateFamily::constant || u <= 0.0) return rho_ * u;
    if (u >= u1_) return raw(u);
    const double h = u1_, tau = u / h;
    const double t2 = tau * tau, t3 = t2 * tau;
    return (t3 - 2 * t2 + tau) * h * rho_ + (-2 * t3 + 3 * t2) * s1_ + (t3 - t2) * h * d1_;
  }

  // s'(u).
  double log_scale_slope(double u) const {
    if (family_ == ProximateFamily::constant || u <= 0.0) return rho_;
    if (u >= u1_) return raw_slope(u);
    const double h = u1_, tau = u / h;
    const double t2 = tau * tau;
    return (3 * t2 - 4 * tau + 1) * rho_ + (-6 * t2 + 6 * tau) * s1_ / h + (3 * t2 - 2 * tau) * d1_;
  }

  // rho^(r); at r = 1 the limit s'(0).
  double value(double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("proximate order needs r > 0");
    const double u = std::log(r);
    if (std::abs(u) < 1e-12) return log_scale_slope(0.0);
    return log_scale(u) / u;
  }

  // t(r) = r^{rho^(r)}, t(0) = 0.
  double scale(double r) const {
    if (r < 0.0) throw std::invalid_argument("scale needs r >= 0");
    if (r == 0.0) return 0.0;
    return std::exp(log_scale(std::log(r)));
  }

  // rho^'(r) r ln r, which tends to 0 for a proximate order.
  double drift(double r) const {
    const double u = std::log(r);
    if (std::abs(u) < 1e-12) return 0.0;
    return (log_scale_slope(u) * u - log_scale(u)) / u;
  }

  // ln phi(e^L): the unique u with s(u) = L, by bracketing and bisection.
  double log_phi_of_log(double log_t) const {
    if (log_t <= 0.0) return log_t / rho_;
    if (family_ == ProximateFamily::constant) return log_t / rho_;
    double lo = 0.0, hi = std::max(1.0, u1_);
    int expansions = 0;
    while (log_scale(hi) < log_t) {
      lo = hi;
      hi *= 2.0;
      if (++expansions > 200) throw InvariantViolation("phi: bracketing failed for ln t = " + std::to_string(log_t));
    }
    if (!(log_scale(lo) <= log_t && log_t <= log_scale(hi))) {
      throw InvariantViolation("phi: normalization is not monotone on the bracket");
    }
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (log_scale(mid) < log_t) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  double phi(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("phi needs t > 0");
    return std::exp(log_phi_of_log(std::log(t)));
  }

  // ln G_q = q ln phi(q) - (q / rho)(1 + ln rho); G_0 = 1.
  double log_g(int q) const {
    if (q < 0) throw std::invalid_argument("G_q needs q >= 0");
    if (q == 0) return 0.0;
    const double dq = q;
    return dq * log_phi_of_log(std::log(dq)) - (dq / rho_) * (1.0 + std::log(rho_));
  }

 private:
  ProximateOrder(ProximateFamily family, double rho, double a, std::optional<double> cutover_radius)
      : family_(family), rho_(rho), a_(a) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("proximate order needs rho > 0");
    if (!std::isfinite(a)) throw std::invalid_argument("proximate order parameter a must be finite");
    if (family == ProximateFamily::constant) {
      u1_ = 0.0;
      return;
    }
    if (cutover_radius) {
      if (!(*cutover_radius > 1.0)) throw InvariantViolation("normalization cutover radius must exceed 1");
      u1_ = std::log(*cutover_radius);
      if (!set_spline()) {
        throw InvariantViolation("normalization spline is not monotone for cutover radius " +
                                 std::to_string(*cutover_radius));
      }
      return;
    }
    u1_ = family == ProximateFamily::loglog ? std::exp(1.0) : 1.0;
    while (!set_spline()) {
      u1_ *= 1.25;
      if (u1_ > 1e6) throw InvariantViolation("no monotone normalization found for " + describe());
    }
  }

  double raw(double u) const {
    return family_ == ProximateFamily::logshift ? rho_ * u + a_ : rho_ * u + a_ * std::log(u);
  }
  double raw_slope(double u) const {
    return family_ == ProximateFamily::logshift ? rho_ : rho_ + a_ / u;
  }

  // Fritsch-Carlson sufficient condition for a monotone cubic Hermite piece.
  bool set_spline() {
    s1_ = raw(u1_);
    d1_ = raw_slope(u1_);
    const double secant = s1_ / u1_;
    if (!(secant > 0.0) || !(d1_ > 0.0)) return false;
    const double alpha = rho_ / secant, beta = d1_ / secant;
    return alpha * alpha + beta * beta <= 9.0;
  }

  ProximateFamily family_;
  double rho_;
  double a_;
  double u1_ = 0.0;
  double s1_ = 0.0;
  double d1_ = 0.0;
};

// "family:rho[:a]".
inline double prox_value(const ProximateOrder& po, double r) { return po.value(r); }

// G_q itself; overflows to inf for large q, where log_g should be used.
inline double g_q(const ProximateOrder& po, int q) { return std::exp(po.log_g(q)); }

inline ProximateOrder parse_proximate_order(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3) throw ParseError("proximate order must be family:rho[:a], got '" + spec + "'");
  try {
    const double rho = std::stod(parts[1]);
    const double a = parts.size() == 3 ? std::stod(parts[2]) : 0.0;
    return ProximateOrder::make(parse_family(parts[0]), rho, a);
  } catch (const std::logic_error&) {
    throw ParseError("malformed proximate order '" + spec + "'");
  }
}

// ---------------------------------------------------------------------------
// One-dimensional maximization of a log-domain objective over r in [0, inf).

struct LogMaximum {
  double value;   // max of the objective
  double radius;  // maximizing r (0 when the r -> 0+ limit wins)
};

// Maximizes objective(u), u = ln r, given its r -> 0+ limit. The objective must
// eventually decrease; a coarse log grid locates the best cell, golden-section
// search refines it.
inline LogMaximum maximize_over_radius(const std::function<double(double)>& objective, double at_zero,
                                       double u_min = -30.0) {
  LogMaximum best{at_zero, 0.0};
  double u_hi = 1.0;
  double running = std::max(at_zero, objective(u_min));
  for (double u = u_min; u <= 4000.0; u += 0.5) {
    const double v = objective(u);
    running = std::max(running, v);
    if (u > 1.0 && v < running - 60.0 && v < objective(u - 0.5)) {
      u_hi = u;
      break;
    }
    u_hi = u;
  }

  constexpr int kGrid = 800;
  const double step = (u_hi - u_min) / kGrid;
  int best_i = -1;
  double best_grid = kNegInf;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = objective(u_min + i * step);
    if (v > best_grid) {
      best_grid = v;
      best_i = i;
    }
  }
  double lo = u_min + std::max(best_i - 1, 0) * step;
  double hi = u_min + std::min(best_i + 1, kGrid) * step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = objective(c), fd = objective(d);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = objective(d);
    }
  }
  const double u_star = fc > fd ? c : d;
  const double v_star = std::max({fc, fd, best_grid});
  const double u_arg = v_star == best_grid ? u_min + best_i * step : u_star;
  if (v_star > best.value) best = {v_star, std::exp(u_arg)};
  return best;
}

struct LogBracket {
  double lower = kNegInf;
  double upper = kNegInf;
};

struct NormBracket {
  double log_lower = kNegInf;
  double log_upper = kNegInf;
  double radius = 0.0;  // where the upper objective peaks

  double lower() const { return std::exp(log_lower); }
  double upper() const { return std::exp(log_upper); }
};

// Per-degree sums A_d = sum_{|m| = d} ||a_m|| in log form.
template <Scalar T>
std::map<int, double> log_degree_norms(const MonogenicSeries<T>& f) {
  std::map<int, double> out;
  for (const auto& [m, a] : f.coefficients()) {
    const double ln = std::log(a.norm());
    auto [it, inserted] = out.emplace(m.degree(), ln);
    if (!inserted) it->second = log_sum_exp(it->second, ln);
  }
  return out;
}

// ln sup_r [ (sum_d A_d r^d) e^{-sigma t(r)} ].
inline LogMaximum log_weighted_sup(const std::map<int, double>& log_degree_norm, const ProximateOrder& po,
                                   double sigma) {
  if (log_degree_norm.empty()) return {kNegInf, 0.0};
  const auto at_zero_it = log_degree_norm.find(0);
  const double at_zero = at_zero_it == log_degree_norm.end() ? kNegInf : at_zero_it->second;
  auto objective = [&](double u) {
    double s = kNegInf;
    for (const auto& [d, la] : log_degree_norm) s = log_sum_exp(s, la + d * u);
    return s - sigma * std::exp(po.log_scale(u));
  };
  return maximize_over_radius(objective, at_zero);
}

// ||f||_{rho,sigma} = sup_x ||f(x)|| exp(-sigma ||x||^{rho(||x||)}), bracketed.
// The upper end maximizes the coefficient bound sum ||a_m|| r^{|m|}; the lower
// end is the sampled modulus at that radius (or ||a_0|| at r = 0).
template <Scalar T>
NormBracket weighted_norm(const MonogenicSeries<T>& f, const ProximateOrder& po, double sigma, int samples = 256,
                          std::uint64_t seed = 1) {
  if (!(sigma > 0.0)) throw std::invalid_argument("weighted norm needs sigma > 0");
  NormBracket out;
  if (f.is_zero()) return out;
  const LogMaximum up = log_weighted_sup(log_degree_norms(f), po, sigma);
  out.log_upper = up.value;
  out.radius = up.radius;
  const double a0 = f.coefficient(MultiIndex(f.dimension())).norm();
  out.log_lower = a0 > 0.0 ? std::log(a0) : kNegInf;
  if (up.radius > 0.0) {
    const ModulusBracket mm = max_modulus(f, up.radius, samples, seed);
    if (mm.lower > 0.0) {
      out.log_lower = std::max(out.log_lower, std::log(mm.lower) - sigma * po.scale(up.radius));
    }
  }
  out.log_lower = std::min(out.log_lower, out.log_upper);
  return out;
}

// K_q = sup_{||x|| <= 1} ||P_q(x)||: lower by sampling the sphere (P_q is
// homogeneous), upper = sum_{|m| = q} ||a_m|| since ||V_m|| <= 1 on the ball.
template <Scalar T>
LogBracket k_q(const MonogenicSeries<T>& f, int q, int samples, std::uint64_t seed = 1) {
  const MonogenicSeries<double> part = f.homogeneous_part(q).to_float();
  LogBracket out;
  if (part.is_zero()) return out;
  double upper = 0.0;
  for (const auto& [m, a] : part.coefficients()) upper += a.norm();
  double lower = 0.0;
  for (const Point& p : sphere_directions(f.dimension() + 1, samples, seed)) {
    lower = std::max(lower, series_eval(part, make_paravector<double>(p)).norm());
  }
  out.upper = std::log(upper);
  out.lower = lower > 0.0 ? std::min(std::log(lower), out.upper) : kNegInf;
  return out;
}

// ---------------------------------------------------------------------------
// Log-domain coefficient data for the estimators.

struct LogCoefficientTable {
  int n = 1;
  std::map<MultiIndex, double> log_norm;  // ln ||a_m||; zero coefficients absent
};

using KqTable = std::map<int, LogBracket>;

template <Scalar T>
LogCoefficientTable log_coefficients(const MonogenicSeries<T>& f) {
  LogCoefficientTable t{f.dimension(), {}};
  for (const auto& [m, a] : f.coefficients()) t.log_norm.emplace(m, std::log(a.norm()));
  return t;
}

template <Scalar T>
KqTable kq_table(const MonogenicSeries<T>& f, int samples, std::uint64_t seed = 1) {
  KqTable out;
  for (int q = 0; q <= f.top_degree(); ++q) {
    LogBracket b = k_q(f, q, samples, seed);
    if (b.upper != kNegInf) out.emplace(q, b);
  }
  return out;
}

inline bool is_axis_index(const MultiIndex& m) {
  int nonzero = 0;
  for (int e : m.entries()) nonzero += e != 0;
  return nonzero <= 1;
}

// K_q brackets from coefficient norms alone: ||a_m|| <= c(n,m) K_q (Cauchy on
// the unit ball) bounds below, the triangle inequality above. A degree carried
// by a single axis coefficient a V_{q e_i} has K_q = ||a|| exactly.
inline KqTable kq_table(const LogCoefficientTable& t) {
  std::map<int, std::vector<std::pair<MultiIndex, double>>> by_degree;
  for (const auto& [m, ln] : t.log_norm) by_degree[m.degree()].emplace_back(m, ln);
  KqTable out;
  for (const auto& [q, items] : by_degree) {
    LogBracket b;
    for (const auto& [m, ln] : items) {
      b.upper = log_sum_exp(b.upper, ln);
      b.lower = std::max(b.lower, ln - log_c_nm(t.n, m));
    }
    if (items.size() == 1 && is_axis_index(items.front().first)) b.lower = b.upper;
    out.emplace(q, b);
  }
  return out;
}

enum class AxisFamily {
  power,           // ||a_q|| = (e rho sigma / q)^{q / rho}
  mittag_leffler,  // ||a_q|| = sigma^{q / rho} / Gamma(1 + q / rho)
};

// Synthetic data of order rho and type sigma carried on the axis indices
// (q, 0, ..., 0), q = 0..q_max, a_0 = 1. With include_c the norms are scaled by
// c(n, m).
inline LogCoefficientTable axis_family(int n, double rho, double sigma, int q_max,
                                       AxisFamily family = AxisFamily::power, bool include_c = false) {
  LogCoefficientTable t{n, {}};
  for (int q = 0; q <= q_max; ++q) {
    MultiIndex m(n);
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[0] = q;
    m = MultiIndex(e);
    double ln = 0.0;
    if (q > 0) {
      const double dq = q;
      ln = family == AxisFamily::power ? (dq / rho) * std::log(std::exp(1.0) * rho * sigma / dq)
                                       : (dq / rho) * std::log(sigma) - std::lgamma(1.0 + dq / rho);
    }
    if (include_c) ln += log_c_nm(n, m);
    t.log_norm.emplace(m, ln);
  }
  return t;
}

// A float series realizing a log table (entries must not underflow).
inline MonogenicSeries<double> series_from_log_table(const LogCoefficientTable& t) {
  int top = 0;
  for (const auto& [m, ln] : t.log_norm) top = std::max(top, m.degree());
  MonogenicSeries<double> f(t.n, top);
  for (const auto& [m, ln] : t.log_norm) f.set(m, CliffordNumber<double>::scalar(t.n, std::exp(ln)));
  return f;
}

struct Window {
  int q0 = 1;
  int q1 = 1;

  bool contains(int q) const { return q >= q0 && q <= q1; }
  std::string describe() const { return "[" + std::to_string(q0) + "," + std::to_string(q1) + "]"; }
};

inline Window parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("window must be q0:q1, got '" + s + "'");
  try {
    Window w{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    if (w.q0 < 1 || w.q1 < w.q0) throw ParseError("window needs 1 <= q0 <= q1, got '" + s + "'");
    return w;
  } catch (const std::logic_error&) {
    throw ParseError("malformed window '" + s + "'");
  }
}

struct OrderEstimate {
  double rho;             // fitted order
  double raw_ratio_max;   // max over the window of |m| ln|m| / (-ln(||a_m|| / c(n,m)))
  std::vector<int> degrees;
};

namespace detail {

// Least squares y ~ X beta for three columns, via normal equations with
// column scaling and partial pivoting.
inline std::array<double, 3> least_squares3(const std::vector<std::array<double, 3>>& x,
                                            const std::vector<double>& y) {
  std::array<double, 3> scale{0, 0, 0};
  for (const auto& row : x) {
    for (int j = 0; j < 3; ++j) scale[j] = std::max(scale[j], std::abs(row[j]));
  }
  for (double& s : scale) s = s > 0 ? s : 1.0;
  long double a[3][4] = {};
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int j = 0; j < 3; ++j) {
      const long double xj = x[i][j] / scale[j];
      for (int k = 0; k < 3; ++k) a[j][k] += xj * (x[i][k] / scale[k]);
      a[j][3] += xj * y[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    for (int k = 0; k < 4; ++k) std::swap(a[col][k], a[piv][k]);
    if (a[col][col] == 0) throw UndefinedEstimate("degenerate least-squares system");
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::array<double, 3> beta{};
  for (int j = 0; j < 3; ++j) beta[j] = static_cast<double>(a[j][3] / a[j][j]) / scale[j];
  return beta;
}

}  // namespace detail

// Order from coefficients on a finite window of degrees.
//
// With y_q = -max_{|m|=q} ln(||a_m|| / c(n,m)), the classical expression is
// rho = limsup q ln q / y_q. For an order-rho, type-sigma function
// y_q = (q / rho)(ln q - ln(e rho sigma)) + o(q), so that ratio approaches rho
// only like 1/ln q. The estimate therefore fits y_q ~ alpha q ln q + beta q + gamma
// over the window and returns 1/alpha; the raw ratio maximum is reported
// alongside. Windows holding fewer than three degrees fall back to the ratio.
inline OrderEstimate order_from_coeffs(const LogCoefficientTable& t, Window w) {
  std::map<int, double> best;
  for (const auto& [m, ln] : t.log_norm) {
    const int q = m.degree();
    if (!w.contains(q) || ln == kNegInf) continue;
    const double v = ln - log_c_nm(t.n, m);
    auto [it, inserted] = best.emplace(q, v);
    if (!inserted) it->second = std::max(it->second, v);
  }
  if (best.empty()) throw UndefinedEstimate("order: no nonzero coefficients in window " + w.describe());

  OrderEstimate out{0.0, kNegInf, {}};
  std::vector<std::array<double, 3>> x;
  std::vector<double> y;
  for (const auto& [q, v] : best) {
    const double dq = q;
    const double yq = -v;
    out.degrees.push_back(q);
    if (yq > 0.0) out.raw_ratio_max = std::max(out.raw_ratio_max, dq * std::log(dq) / yq);
    x.push_back({dq * std::log(dq), dq, 1.0});
    y.push_back(yq);
  }
  if (x.size() < 3) {
    if (out.raw_ratio_max == kNegInf) throw UndefinedEstimate("order: coefficients do not decay in window");
    out.rho = out.raw_ratio_max;
    return out;
  }
  const auto beta = detail::least_squares3(x, y);
  if (!(beta[0] > 0.0)) throw UndefinedEstimate("order: fitted growth coefficient is not positive");
  out.rho = 1.0 / beta[0];
  return out;
}

// sigma = (1 / (e rho)) limsup |m| ||a_m||^{rho / |m|}, as a max over the
// window. A window without nonzero coefficients gives 0.
inline double type_from_coeffs(const LogCoefficientTable& t, double rho, Window w) {
  if (!(rho > 0.0)) throw std::invalid_argument("type needs rho > 0");
  double best = kNegInf;
  for (const auto& [m, ln] : t.log_norm) {
    const int q = m.degree();
    if (!w.contains(q) || ln == kNegInf) continue;
    best = std::max(best, std::log(static_cast<double>(q)) + (rho / q) * ln);
  }
  if (best == kNegInf) return 0.0;
  return std::exp(best - 1.0 - std::log(rho));
}

// Solves (1/rho) ln sigma = max_q ((1/q) ln K_q + ln phi(q)) - 1/rho - ln(rho)/rho.
inline double type_from_kq(const KqTable& kq, const ProximateOrder& po, Window w, bool use_upper = true) {
  const double rho = po.rho();
  double best = kNegInf;
  for (const auto& [q, b] : kq) {
    const double lk = use_upper ? b.upper : b.lower;
    if (!w.contains(q) || lk == kNegInf) continue;
    best = std::max(best, lk / q + po.log_phi_of_log(std::log(static_cast<double>(q))));
  }
  if (best == kNegInf) throw UndefinedEstimate("type: no K_q data in window " + w.describe());
  return std::exp(rho * best - 1.0 - std::log(rho));
}

struct MembershipEstimate {
  double kq_value;        // max_q (K_q^upper G_q)^{rho/q}
  double kq_value_lower;  // same with the K_q lower bracket
  double coeff_value;     // max_q (max_{|m|=q} ||a_m|| G_q)^{rho/q}
  double coeff_slack;     // n^rho, the allowance between the two
};

// Finite-window surrogates for limsup (K_q G_q)^{rho/q} and its coefficient
// variant. Empty data gives 0.
inline MembershipEstimate membership_limsup(const LogCoefficientTable& t, const KqTable& kq,
                                            const ProximateOrder& po, Window w) {
  const double rho = po.rho();
  MembershipEstimate out{0.0, 0.0, 0.0, std::pow(static_cast<double>(t.n), rho)};
  double up = kNegInf, lo = kNegInf, co = kNegInf;
  for (const auto& [q, b] : kq) {
    if (!w.contains(q) || q == 0) continue;
    const double lg = po.log_g(q);
    if (b.upper != kNegInf) up = std::max(up, (rho / q) * (b.upper + lg));
    if (b.lower != kNegInf) lo = std::max(lo, (rho / q) * (b.lower + lg));
  }
  for (const auto& [m, ln] : t.log_norm) {
    const int q = m.degree();
    if (!w.contains(q) || q == 0 || ln == kNegInf) continue;
    co = std::max(co, (rho / q) * (ln + po.log_g(q)));
  }
  if (up != kNegInf) out.kq_value = std::exp(up);
  if (lo != kNegInf) out.kq_value_lower = std::exp(lo);
  if (co != kNegInf) out.coeff_value = std::exp(co);
  return out;
}

struct GrowthRow {
  int q;
  double ln_kq_lower;
  double ln_kq_upper;
  double ln_gq;
  double kq_rhs;            // (1/q) ln K_q + ln phi(q) - 1/rho - ln(rho)/rho
  double membership_value;  // (K_q G_q)^{rho/q}
};

struct GrowthReport {
  ProximateOrder po;
  Window window;
  std::optional<double> order_estimate;
  std::optional<double> type_estimate;
  MembershipEstimate membership{};
  double sigma_tested = 0.0;
  bool member = false;  // membership surrogate <= sigma_tested
  std::vector<GrowthRow> rows;
};

// Per-degree diagnostics on the window plus the estimates; the verdict is
// recomputable from the rows.
inline GrowthReport growth_report(const LogCoefficientTable& t, const KqTable& kq, const ProximateOrder& po,
                                  Window w, double sigma_test) {
  GrowthReport rep{po, w, {}, {}, {}, sigma_test, false, {}};
  const double rho = po.rho();
  bool any = false;
  for (const auto& [q, b] : kq) {
    if (!w.contains(q) || q == 0) continue;
    any = true;
    GrowthRow row{q, b.lower, b.upper, po.log_g(q), kNegInf, 0.0};
    if (b.upper != kNegInf) {
      row.kq_rhs = b.upper / q + po.log_phi_of_log(std::log(static_cast<double>(q))) - 1.0 / rho - std::log(rho) / rho;
      row.membership_value = std::exp((rho / q) * (b.upper + row.ln_gq));
    }
    rep.rows.push_back(row);
  }
  if (!any) throw UndefinedEstimate("growth: window " + w.describe() + " holds no data");
  try {
    rep.order_estimate = order_from_coeffs(t, w).rho;
  } catch (const UndefinedEstimate&) {
  }
  try {
    rep.type_estimate = type_from_kq(kq, po, w);
  } catch (const UndefinedEstimate&) {
  }
  rep.membership = membership_limsup(t, kq, po, w);
  rep.member = rep.membership.kq_value <= sigma_test * (1.0 + 1e-9);
  return rep;
}

// ---------------------------------------------------------------------------
// Scale properties, each with a fitted witness constant.

using ScaleFn = std::function<double(double)>;

inline ScaleFn scale_fn(const ProximateOrder& po) {
  return [po](double r) { return po.scale(r); };
}

struct SubadditiveFit {
  double k;
  double b;            // max over the grid of t(r+s) - k (t(r) + t(s)), floored at 0
  double outer_excess; // same excess restricted to the outer band r + s >= 0.9 (r_max + s_max)
};

// (r+s)^{rho(r+s)} <= k (r^{rho(r)} + s^{rho(s)}) + B with k = 2^rho on r, s in [0, r_max].
inline SubadditiveFit fit_subadditive(const ScaleFn& t, double k, double r_max = 100.0, int grid = 101) {
  SubadditiveFit fit{k, 0.0, kNegInf};
  const double band = 0.9 * 2.0 * r_max;
  for (int i = 0; i < grid; ++i) {
    const double r = r_max * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double s = r_max * j / (grid - 1);
      const double excess = t(r + s) - k * (t(r) + t(s));
      fit.b = std::max(fit.b, excess);
      if (r + s >= band) fit.outer_excess = std::max(fit.outer_excess, excess);
    }
  }
  return fit;
}

struct ScalingFit {
  double factor;        // k in (k r)^{rho(kr)}
  double eta;
  double c_eta;         // max over the grid of (kr)^{rho(kr)} - (1+eta) k^rho r^{rho(r)}, floored at 0
  double outer_excess;  // same excess on the last decade of the grid
};

// (kr)^{rho(kr)} <= (1+eta) k^rho r^{rho(r)} + C_eta on r in [0, r_max] (log grid).
inline ScalingFit fit_scaling(const ScaleFn& t, double rho, double factor, double eta, double r_max = 1e6,
                              int per_decade = 60) {
  ScalingFit fit{factor, eta, 0.0, kNegInf};
  const double kr = (1.0 + eta) * std::pow(factor, rho);
  const double lo = -3.0, hi = std::log10(r_max);
  const int count = static_cast<int>((hi - lo) * per_decade);
  for (int i = 0; i <= count; ++i) {
    const double r = std::pow(10.0, lo + (hi - lo) * i / count);
    const double excess = t(factor * r) - kr * t(r);
    fit.c_eta = std::max(fit.c_eta, excess);
    if (r >= r_max / 10.0) fit.outer_excess = std::max(fit.outer_excess, excess);
  }
  return fit;
}

// y_sigma(u, t) = ln(phi(t) / phi(u)) - sigma t / u.
inline double y_sigma(const ProximateOrder& po, double sigma, double u, double t) {
  return po.log_phi_of_log(std::log(t)) - po.log_phi_of_log(std::log(u)) - sigma * t / u;
}

struct YSigmaSearch {
  std::optional<double> t1;  // smallest grid T1 that works
  double worst_margin;       // at that T1 (or at the largest candidate when none works)
};

// Smallest grid value T1 such that y_sigma(u,t) + (1/rho) ln(e rho) <= -(1/rho) ln sigma'
// for all grid u, t >= T1. The grid spans [1, t_max] logarithmically and is
// dense in the ratio t/u.
inline YSigmaSearch search_y_sigma(const ProximateOrder& po, double sigma, double sigma_prime, double t1_max = 1e4,
                                   double t_max = 1e8, int per_decade = 24) {
  const double rho = po.rho();
  const double bound = -std::log(sigma_prime) / rho - std::log(std::exp(1.0) * rho) / rho;
  const int count = static_cast<int>(std::log10(t_max) * per_decade);
  std::vector<double> grid;
  for (int i = 0; i <= count; ++i) grid.push_back(std::pow(10.0, std::log10(t_max) * i / count));

  // worst[i] = min over u, t >= grid[i] of the margin; filled right to left.
  std::vector<double> worst(grid.size(), std::numeric_limits<double>::infinity());
  for (int i = static_cast<int>(grid.size()) - 1; i >= 0; --i) {
    double w = i + 1 < static_cast<int>(grid.size()) ? worst[static_cast<std::size_t>(i + 1)] : std::numeric_limits<double>::infinity();
    const double g = grid[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i); j < grid.size(); ++j) {
      w = std::min(w, bound - y_sigma(po, sigma, g, grid[j]));
      w = std::min(w, bound - y_sigma(po, sigma, grid[j], g));
    }
    worst[static_cast<std::size_t>(i)] = w;
  }
  YSigmaSearch out{{}, worst.back()};
  for (std::size_t i = 0; i < grid.size() && grid[i] <= t1_max; ++i) {
    if (worst[i] >= -1e-12) {
      out.t1 = grid[i];
      out.worst_margin = worst[i];
      return out;
    }
    out.worst_margin = worst[i];
  }
  return out;
}

// min over p, q <= q_max of ln G_{p+q} - ln G_p - ln G_q; >= 0 when supermultiplicative.
inline double supermultiplicative_margin(const std::vector<double>& log_g) {
  double worst = std::numeric_limits<double>::infinity();
  const int q_max = static_cast<int>(log_g.size()) - 1;
  for (int p = 1; p <= q_max; ++p) {
    for (int q = 1; p + q <= q_max; ++q) {
      worst = std::min(worst, log_g[static_cast<std::size_t>(p + q)] - log_g[static_cast<std::size_t>(p)] -
                                  log_g[static_cast<std::size_t>(q)]);
    }
  }
  return worst;
}

inline std::vector<double> log_g_table(const ProximateOrder& po, int q_max) {
  std::vector<double> out;
  for (int q = 0; q <= q_max; ++q) out.push_back(po.log_g(q));
  return out;
}

// r^{rho1(r)} = O(r^{rho2(r)}): the ratio t1/t2 stays bounded on a log grid up
// to r_max and does not grow over the last decade.
inline bool scale_dominated(const ProximateOrder& po1, const ProximateOrder& po2, double r_max = 1e8) {
  double tail_start = kNegInf, tail_max = kNegInf;
  for (double lr = 0.0; lr <= std::log(r_max) + 1e-9; lr += 0.05) {
    const double v = po1.log_scale(lr) - po2.log_scale(lr);
    if (lr >= std::log(r_max / 10.0)) {
      if (tail_start == kNegInf) tail_start = v;
      tail_max = std::max(tail_max, v);
    }
  }
  return tail_max <= tail_start + 1e-9;
}

}  // namespace monogenic
