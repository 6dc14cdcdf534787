#pragma once

// Margin-reporting checks of the quantitative estimates, each with a designated
// corrupted input that must make it fail. A check passes when its worst margin
// (bound minus achieved, log domain where magnitudes are involved) is at least
// -tolerance and every fitted constant is finite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fueter.hpp"
#include "growth.hpp"
#include "io.hpp"
#include "multiindex.hpp"
#include "operator.hpp"
#include "random.hpp"
#include "sampling.hpp"
#include "series.hpp"

namespace monogenic {

struct CheckReport {
  std::string name;
  std::string instance;
  double margin = 0.0;
  std::vector<std::pair<std::string, double>> constants;
  bool pass = false;
  std::string note;
};

inline CheckReport make_report(std::string name, std::string instance, double margin,
                               std::vector<std::pair<std::string, double>> constants, double tolerance,
                               std::string note = {}) {
  CheckReport r{std::move(name), std::move(instance), margin, std::move(constants), false, std::move(note)};
  r.pass = !std::isnan(margin) && margin >= -tolerance;
  for (const auto& [key, v] : r.constants) r.pass = r.pass && std::isfinite(v);
  return r;
}

inline constexpr double kDefaultTolerance = 1e-9;

struct StableFit {
  double margin;  // max over the head minus max over the tail
  double log_c;   // max over everything
};

// Head = degrees below horizon - horizon/3, tail = the rest. A fitted
// constant counts as stable when the tail never exceeds the head.
inline StableFit stable_fit(const std::map<int, double>& ell, int horizon) {
  const int split = horizon - horizon / 3;
  double head = kNegInf, tail = kNegInf;
  for (const auto& [q, v] : ell) {
    if (q > horizon) continue;
    if (q < split || horizon == 0) {
      head = std::max(head, v);
    } else {
      tail = std::max(tail, v);
    }
  }
  const double margin = tail == kNegInf ? 0.0 : head - tail;
  return {margin, std::max(head, tail)};
}

inline void keep_max(std::map<int, double>& ell, int q, double v) {
  auto [it, inserted] = ell.emplace(q, v);
  if (!inserted) it->second = std::max(it->second, v);
}

// ||a_m|| <= c(n,m) M(r) / r^{|m|} with M(r) the coefficient upper bound of
// `modulus_source` (f itself unless a different series is supplied).
template <Scalar T>
CheckReport check_cauchy(const MonogenicSeries<T>& f, const std::vector<double>& radii,
                         const MonogenicSeries<std::type_identity_t<T>>* modulus_source = nullptr, std::string instance = "series",
                         double tolerance = kDefaultTolerance) {
  const MonogenicSeries<T>& src = modulus_source ? *modulus_source : f;
  double worst = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    const double lm = std::log(coefficient_modulus_bound(src, r));
    for (const auto& [m, a] : f.coefficients()) {
      const double bound = log_c_nm(f.dimension(), m) + lm - m.degree() * std::log(r);
      worst = std::min(worst, bound - std::log(a.norm()));
    }
  }
  if (f.is_zero()) worst = 0.0;
  return make_report("cauchy", instance, worst, {}, tolerance);
}

// ||V_m||_{rho,sigma} <= C sigma'^{-|m|/rho} G_|m|, |m| <= q_max, with the
// upper bound ||V_m(x)|| <= ||x||^{|m|}.
inline CheckReport check_vm_norm_bound(const ProximateOrder& po, double sigma, double sigma_prime, int q_max,
                                       double tolerance = kDefaultTolerance) {
  std::map<int, double> ell;
  for (int q = 0; q <= q_max; ++q) {
    const double ln_v = log_weighted_sup({{q, 0.0}}, po, sigma).value;
    ell[q] = ln_v - po.log_g(q) + (q / po.rho()) * std::log(sigma_prime);
  }
  const StableFit fit = stable_fit(ell, q_max);
  std::ostringstream inst;
  inst << po.describe() << " sigma=" << sigma << " sigma'=" << sigma_prime << " Q=" << q_max;
  return make_report("vm_norm_bound", inst.str(), fit.margin, {{"C", std::exp(fit.log_c)}}, tolerance);
}

// (1/m!) ||d^m f||_{rho,k sigma} <= C ||f||_{rho,sigma} (2k c(n,m)^{rho/q} sigma)^{q/rho} / G_q,
// k = 2^rho, |m| <= q_max.
template <Scalar T>
CheckReport check_derivative_bound(const MonogenicSeries<T>& f, const ProximateOrder& po, double sigma, int q_max,
                                   std::string instance = "series", double tolerance = kDefaultTolerance,
                                   const std::type_identity_t<std::function<MonogenicSeries<T>(
                                       const MonogenicSeries<T>&, const MultiIndex&)>>& forged_derivative = {}) {
  const double rho = po.rho();
  const double k = std::pow(2.0, rho);
  const double ln_f = log_weighted_sup(log_degree_norms(f), po, sigma).value;
  const int horizon = std::min(q_max, std::max(f.top_degree(), 0));
  std::map<int, double> ell;
  for (const auto& m : enumerate_up_to(f.dimension(), horizon)) {
    const MonogenicSeries<T> d = forged_derivative ? forged_derivative(f, m) : series_derivative(f, m);
    if (d.is_zero()) continue;
    const int q = m.degree();
    const double lhs = log_weighted_sup(log_degree_norms(d), po, k * sigma).value - m.log_factorial();
    const double rhs = ln_f + (q / rho) * std::log(2.0 * k * sigma) + log_c_nm(f.dimension(), m) - po.log_g(q);
    keep_max(ell, q, lhs - rhs);
  }
  const StableFit fit = stable_fit(ell, horizon);
  return make_report("derivative_bound", instance + " " + po.describe(), fit.margin,
                     {{"k", k}, {"C", std::exp(fit.log_c)}}, tolerance);
}

// ||a_m|| e^{-sigma (1+eta)(s+1)^rho t(r)} <= e^{sigma C_eta} ||f||_{rho,sigma} c(n,m) / (s r)^{|m|}
// on r in [0.1, 100]; ||f|| is taken from `norm_source` (f unless given).
template <Scalar T>
CheckReport check_coefficient_bound(const MonogenicSeries<T>& f, const ProximateOrder& po, double sigma, double s,
                                  double eta, const MonogenicSeries<std::type_identity_t<T>>* norm_source = nullptr,
                                  std::string instance = "series", double tolerance = kDefaultTolerance) {
  const double rho = po.rho();
  const double factor = s + 1.0;
  const ScalingFit scaling = fit_scaling(scale_fn(po), rho, factor, eta);
  const MonogenicSeries<T>& src = norm_source ? *norm_source : f;
  const double ln_f = log_weighted_sup(log_degree_norms(src), po, sigma).value;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 120; ++i) {
    const double r = std::pow(10.0, -1.0 + 3.0 * i / 120.0);
    const double weight = sigma * (1.0 + eta) * std::pow(factor, rho) * po.scale(r);
    for (const auto& [m, a] : f.coefficients()) {
      const double lhs = std::log(a.norm()) - weight;
      const double rhs = sigma * scaling.c_eta + ln_f + log_c_nm(f.dimension(), m) - m.degree() * std::log(s * r);
      worst = std::min(worst, rhs - lhs);
    }
  }
  if (f.is_zero()) worst = 0.0;
  std::ostringstream inst;
  inst << instance << " " << po.describe() << " s=" << s << " eta=" << eta;
  return make_report("coefficient_bound", inst.str(), worst, {{"C_eta", scaling.c_eta}}, tolerance,
                     "radii below 0.1 excluded: the right side diverges as r -> 0");
}

// ||g1 (.) g2||_{rho,W} <= C ||g1||_{rho,tau1} ||g2||_{rho,tau2}, W = (1+eta)(n+delta+1)^rho (tau1+tau2),
// against the constant 2^n e^{C_eta (tau1+tau2)} ((n+delta)/delta)^{2n}.
template <Scalar T>
CheckReport check_ck_norm_bound(const MonogenicSeries<T>& g1, const MonogenicSeries<T>& g2, const ProximateOrder& po,
                                double tau1, double tau2, double delta, double eta,
                                const MonogenicSeries<std::type_identity_t<T>>* forged_product = nullptr, std::string instance = "pair",
                                double tolerance = kDefaultTolerance) {
  const int n = g1.dimension();
  const double rho = po.rho();
  const double base = n + delta + 1.0;
  const double w = (1.0 + eta) * std::pow(base, rho) * (tau1 + tau2);
  const MonogenicSeries<T> product = forged_product ? *forged_product : ck_mul_left(g1, g2);
  const double lhs = log_weighted_sup(log_degree_norms(product), po, w).value;
  const double rhs = log_weighted_sup(log_degree_norms(g1), po, tau1).value +
                     log_weighted_sup(log_degree_norms(g2), po, tau2).value;
  const double c_eta = fit_scaling(scale_fn(po), rho, base, eta).c_eta;
  const double ln_proof = n * std::log(2.0) + c_eta * (tau1 + tau2) + 2.0 * n * std::log((n + delta) / delta);
  const double ln_fit = lhs == kNegInf ? kNegInf : lhs - rhs;
  std::ostringstream inst;
  inst << instance << " " << po.describe() << " tau=(" << tau1 << "," << tau2 << ") delta=" << delta
       << " eta=" << eta;
  return make_report("ck_norm_bound", inst.str(), ln_proof - ln_fit,
                     {{"C_fit", std::exp(ln_fit)}, {"C_proof", std::exp(ln_proof)}, {"C_eta", c_eta}}, tolerance);
}

// The Mittag-Leffler axis family of order rho and type sigma, its K_q, and
// type_from_kq against `claimed_sigma` (within 10%). The error on the small
// window [10,20] is reported alongside as the finite-scale effect.
inline CheckReport check_type_formula(double rho, double sigma, Window w, double claimed_sigma,
                                      double tolerance = kDefaultTolerance) {
  const ProximateOrder po = ProximateOrder::constant(rho);
  const LogCoefficientTable t = axis_family(1, rho, sigma, w.q1, AxisFamily::mittag_leffler);
  const double est = type_from_kq(kq_table(t), po, w);
  const double err = std::abs(est - claimed_sigma) / claimed_sigma;
  const Window small{10, 20};
  const LogCoefficientTable ts = axis_family(1, rho, sigma, small.q1, AxisFamily::mittag_leffler);
  const double err_small = std::abs(type_from_kq(kq_table(ts), po, small) - claimed_sigma) / claimed_sigma;
  std::ostringstream inst;
  inst << "rho=" << rho << " sigma=" << sigma << " claimed=" << claimed_sigma << " window=" << w.describe();
  return make_report("type_formula", inst.str(), 0.10 - err,
                     {{"sigma_est", est}, {"rel_error", err}, {"rel_error_window_10_20", err_small}}, tolerance);
}

inline CheckReport check_supermultiplicativity(const std::vector<double>& log_g, std::string instance,
                                               double tolerance = kDefaultTolerance) {
  return make_report("supermultiplicativity", std::move(instance), supermultiplicative_margin(log_g), {}, tolerance);
}

// k = 2^rho; passes when the excess over k (t(r) + t(s)) vanishes on the outer
// band, so that a finite B covers the compact remainder.
inline CheckReport check_subadditive_power(const ScaleFn& t, double rho, std::string instance, double r_max = 100.0,
                                           double tolerance = kDefaultTolerance) {
  const SubadditiveFit fit = fit_subadditive(t, std::pow(2.0, rho), r_max);
  const double margin = -fit.outer_excess / (1.0 + std::abs(t(2.0 * r_max)));
  return make_report("subadditive_power", std::move(instance), margin,
                     {{"k", fit.k}, {"k_limit", std::pow(2.0, rho) * 1.1}, {"B", fit.b}}, tolerance);
}

inline CheckReport check_scaling_bound(const ScaleFn& t, double rho, double factor, double eta, std::string instance,
                                       double r_max = 1e6, double tolerance = kDefaultTolerance) {
  const ScalingFit fit = fit_scaling(t, rho, factor, eta, r_max);
  const double margin = -fit.outer_excess / (1.0 + std::abs(t(factor * r_max)));
  std::ostringstream inst;
  inst << instance << " k=" << factor << " eta=" << eta;
  return make_report("scaling_bound", inst.str(), margin, {{"C_eta", fit.c_eta}}, tolerance);
}

inline CheckReport check_y_sigma(const ProximateOrder& po, double sigma, double sigma_prime,
                                 double tolerance = kDefaultTolerance) {
  const YSigmaSearch s = search_y_sigma(po, sigma, sigma_prime);
  std::ostringstream inst;
  inst << po.describe() << " sigma=" << sigma << " sigma'=" << sigma_prime << " T1<=1e4";
  std::vector<std::pair<std::string, double>> constants;
  if (s.t1) constants.emplace_back("T1", *s.t1);
  const double margin = s.t1 ? s.worst_margin : std::min(s.worst_margin, -1.0);
  return make_report("y_sigma", inst.str(), margin, std::move(constants), tolerance,
                     s.t1 ? "" : "bounded search exhausted");
}

// |phi(t(r)) - r| / r <= 1e-10 on a 200-point log grid r in [1e-3, 1e8];
// `inverse` is normally the same proximate order.
inline CheckReport check_phi_round_trip(const ProximateOrder& forward, const ProximateOrder& inverse) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double lr = std::log(1e-3) + (std::log(1e8) - std::log(1e-3)) * i / 199.0;
    const double back = inverse.log_phi_of_log(forward.log_scale(lr));
    worst = std::max(worst, std::abs(std::expm1(back - lr)));
  }
  return make_report("phi_round_trip", forward.describe(), 1e-10 - worst, {{"max_rel_error", worst}}, 0.0);
}

// Partial sums S_M of f converge to f in ||.||_{rho, n^rho sigma + eps}: the
// tail norms ||f - S_M|| must decay at least geometrically with ratio 0.9.
template <Scalar T>
CheckReport check_density(const MonogenicSeries<T>& f, const ProximateOrder& po, double sigma, double eps,
                          std::string instance = "series", double tolerance = kDefaultTolerance) {
  const double w = std::pow(static_cast<double>(f.dimension()), po.rho()) * sigma + eps;
  const std::map<int, double> degree_norms = log_degree_norms(f);
  const int top = f.top_degree();
  std::vector<double> tail;
  for (int m = 0; m < top; ++m) {
    std::map<int, double> rest;
    for (const auto& [q, v] : degree_norms) {
      if (q > m) rest.emplace(q, v);
    }
    tail.push_back(log_weighted_sup(rest, po, w).value);
  }
  double worst_ratio = 0.0;
  for (std::size_t m = 1; m + 1 < tail.size(); ++m) worst_ratio = std::max(worst_ratio, std::exp(tail[m + 1] - tail[m]));
  std::ostringstream inst;
  inst << instance << " " << po.describe() << " weight=" << w;
  return make_report("density", inst.str(), 0.9 - worst_ratio, {{"max_tail_ratio", worst_ratio}}, tolerance);
}

// Dirac residual of V_m, |m| <= q_max, n = 1..n_max, at 20 points of the ball
// of radius 1.5, relative to 1 + ||x||^{|m|}; bound 1e-6.
inline CheckReport check_monogenicity(int n_max, int q_max, FactorSide side, std::uint64_t seed,
                                      double tolerance = kDefaultTolerance) {
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const std::vector<Point> pts = ball_points(n + 1, 20, 1.5, seed);
    for (const auto& m : enumerate_up_to(n, q_max)) {
      auto eval = [&](const Point& p) { return fueter_eval(m, make_paravector<double>(p), side); };
      auto scale = [&](const Point& p) {
        double r2 = 0.0;
        for (double v : p) r2 += v * v;
        return std::pow(std::sqrt(r2), m.degree());
      };
      worst = std::max(worst, dirac_residual_fn(n, eval, pts, 1e-5, scale).relative);
    }
  }
  std::ostringstream inst;
  inst << "V_m, n<=" << n_max << ", |m|<=" << q_max
       << (side == FactorSide::ordered ? ", ordered words" : side == FactorSide::left ? ", left recursion" : "");
  return make_report("monogenicity", inst.str(), 1e-6 - worst, {{"max_relative_residual", worst}}, tolerance);
}

template <Scalar T>
double max_coefficient_difference(const MonogenicSeries<T>& a, const MonogenicSeries<T>& b) {
  double worst = 0.0;
  const MonogenicSeries<T> diff = a - b;
  for (const auto& [m, c] : diff.coefficients()) worst = std::max(worst, c.norm());
  return worst;
}

template <Scalar T>
double max_table_difference(const std::map<MultiIndex, MonogenicSeries<T>>& a,
                            const std::map<MultiIndex, MonogenicSeries<T>>& b, int n) {
  double worst = 0.0;
  std::vector<MultiIndex> keys;
  for (const auto& [k, v] : a) keys.push_back(k);
  for (const auto& [k, v] : b) keys.push_back(k);
  for (const auto& k : keys) {
    auto ia = a.find(k);
    auto ib = b.find(k);
    const MonogenicSeries<T> za(n, 0);
    worst = std::max(worst, max_coefficient_difference(ia == a.end() ? za : ia->second, ib == b.end() ? za : ib->second));
  }
  return worst;
}

// Exact round trips hom -> op -> hom and op -> hom -> op on random rational
// instances; margin is minus the largest coefficient discrepancy (0 when exact).
// With alternate = false the inversion drops the (-1)^{|m-p|} signs.
inline CheckReport check_op_round_trip(int n, int degree, int instances, std::uint64_t seed, bool alternate = true) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const HomTable<Rational> h = random_hom_table(n, degree, 2, rng);
    const HomTable<Rational> back = op_to_hom(detail::hom_to_op_signed(h, alternate), degree);
    worst = std::max(worst, max_table_difference(h.entries(), back.entries(), n));
    const OperatorSymbol<Rational> p = random_operator(n, degree, 2, rng);
    const OperatorSymbol<Rational> again = detail::hom_to_op_signed(op_to_hom(p, degree), alternate);
    worst = std::max(worst, max_table_difference(p.entries(), again.entries(), n));
  }
  std::ostringstream inst;
  inst << "exact, n=" << n << ", Q=" << degree << ", " << instances << " instances"
       << (alternate ? "" : ", unsigned inversion");
  return make_report("op_round_trip", inst.str(), -worst, {}, 0.0);
}

// F(f) = g (.) f + h (.) d_{x_1} f for fixed random g, h; the reconstructed P
// must satisfy P V_s = F V_s exactly for |s| <= degree.
inline CheckReport check_blackbox_agreement(int n, int degree, std::uint64_t seed,
                                            Denominator denominator = Denominator::s_factorial) {
  std::mt19937_64 rng(seed);
  const MonogenicSeries<Rational> g = random_series(n, 2, rng);
  const MonogenicSeries<Rational> h = random_series(n, 2, rng);
  const MultiIndex e1 = MultiIndex::unit(n, 1);
  const BlackBox<Rational> f = [&](const MonogenicSeries<Rational>& x) {
    return ck_mul_left(g, x) + ck_mul_left(h, series_derivative(x, e1));
  };
  const OperatorSymbol<Rational> p = reconstruct_from_blackbox(f, n, degree, denominator);
  const double diff = polynomial_disagreement(p, f, degree, degree + 2);
  std::ostringstream inst;
  inst << "exact, n=" << n << ", |s|<=" << degree
       << (denominator == Denominator::s_factorial ? "" : ", m! denominator");
  return make_report("blackbox_agreement", inst.str(), -diff, {}, 0.0);
}

// Tail bound of Pf for the geometric class operator (lambda0 = 0.01,
// certified for every lambda on lambda >= lambda0) and the power axis family of type
// tau: T(M)/T(M+1) >= 2 for M >= 10 when eps = factor * threshold.
inline CheckReport check_tail_convergence(int n, const ProximateOrder& po1, const ProximateOrder& po2, double tau,
                                          double epsilon_factor, int q_max = 40,
                                          double tolerance = kDefaultTolerance) {
  const OperatorSymbol<double> p = geometric_class_operator(n, po1, 0.01, q_max);
  const ClassCertificate cert = op_class_check(p, po1, po2, {1.0}, {0.02, 0.1, 0.5, 1.0}, q_max);
  const LogCoefficientTable axis = axis_family(n, po1.rho(), tau, q_max);
  const double ln_f = log_weighted_sup(log_degree_norms(series_from_log_table(axis)), po1, tau).value;
  const TailSurrogate tail = tail_convergence(p, po1, po2, 1.0, tau, ln_f, epsilon_factor, q_max);
  const double ratio = tail.min_ratio(10);
  std::ostringstream inst;
  inst << "n=" << n << " " << po1.describe() << " -> " << po2.describe() << " tau=" << tau
       << " eps=" << epsilon_factor << "*threshold";
  return make_report("tail_convergence", inst.str(), cert.every_lambda ? ratio - 2.0 : -1.0,
                     {{"epsilon", tail.epsilon},
                      {"epsilon_threshold", tail.epsilon_threshold},
                      {"min_ratio_M_ge_10", ratio},
                      {"sigma_weight_rho1", tail.sigma_weight_rho1},
                      {"sigma_weight_rho2", tail.sigma_weight_rho2}},
                     tolerance, cert.every_lambda ? "" : "operator not certified for every lambda");
}

// ---------------------------------------------------------------------------

struct VerifyConfig {
  int n = 2;
  int degree = 5;
  int samples = 256;
  std::uint64_t seed = 1;
  double tolerance = kDefaultTolerance;
  double delta = 1.0;
  double eta = 0.1;
  std::vector<ProximateOrder> orders = {ProximateOrder::constant(1.0), ProximateOrder::logshift(1.0, std::log(2.0)),
                                        ProximateOrder::loglog(1.0, 1.0)};
  std::optional<MonogenicSeries<double>> series;
  std::optional<MonogenicSeries<double>> modulus;
  bool corrupt_fueter = false;
};

inline std::vector<std::string> check_names() {
  return {"blackbox_agreement", "cauchy",           "ck_norm_bound",   "coefficient_bound",
          "density",            "derivative_bound", "monogenicity",    "op_round_trip",
          "phi_round_trip",     "scaling_bound",    "subadditive_power", "supermultiplicativity",
          "tail_convergence",   "type_formula",     "vm_norm_bound",   "y_sigma"};
}

namespace detail {

inline MonogenicSeries<double> axis_series(int n, double rho, double sigma, int q_max) {
  return series_from_log_table(axis_family(n, rho, sigma, q_max));
}

inline std::vector<MonogenicSeries<double>> default_series(const VerifyConfig& c) {
  if (c.series) return {*c.series};
  std::mt19937_64 rng(c.seed);
  std::vector<MonogenicSeries<double>> out;
  for (int i = 0; i < 10; ++i) out.push_back(random_series(c.n, c.degree, rng).to_float());
  return out;
}

inline std::vector<CheckReport> sorted(std::vector<CheckReport> v) {
  std::stable_sort(v.begin(), v.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return v;
}

}  // namespace detail

using CheckTask = std::function<std::vector<CheckReport>()>;

// Every check on the configured instances.
inline std::vector<CheckTask> check_tasks(const VerifyConfig& c) {
  const double tol = c.tolerance;
  std::vector<CheckTask> tasks;
  tasks.push_back([c] { return std::vector{check_blackbox_agreement(c.n, 6, c.seed)}; });
  tasks.push_back([c, tol] {
    std::vector<CheckReport> out;
    const std::vector<double> radii{0.5, 1.0, 2.0, 4.0};
    for (const auto& f : detail::default_series(c)) {
      out.push_back(check_cauchy(f, radii, c.modulus ? &*c.modulus : nullptr,
                                 c.series ? "configured series" : "random rational series", tol));
    }
    return out;
  });
  tasks.push_back([c, tol] {
    const ProximateOrder po = ProximateOrder::constant(1.0);
    const auto axis = detail::axis_series(c.n, 1.0, 1.0, 10);
    std::mt19937_64 rng(c.seed + 7);
    const auto g1 = random_series(c.n, 4, rng).to_float();
    const auto g2 = random_series(c.n, 4, rng).to_float();
    return std::vector{check_ck_norm_bound(axis, axis, po, 1.0, 1.0, c.delta, c.eta, nullptr, "axis family", tol),
                       check_ck_norm_bound(g1, g2, po, 1.0, 1.0, c.delta, c.eta, nullptr, "random pair", tol)};
  });
  tasks.push_back([c, tol] {
    std::vector<CheckReport> out;
    const ProximateOrder po = ProximateOrder::constant(1.0);
    out.push_back(check_coefficient_bound(detail::axis_series(c.n, 1.0, 1.0, 20), po, 1.0, c.n + 1.0, c.eta, nullptr,
                                        "axis family", tol));
    for (const auto& f : detail::default_series(c)) {
      out.push_back(check_coefficient_bound(f, po, 1.0, c.n + 1.0, c.eta, nullptr, "series", tol));
    }
    return out;
  });
  tasks.push_back([c, tol] {
    std::vector<CheckReport> out;
    for (double rho : {1.0, 2.0}) {
      out.push_back(check_density(detail::axis_series(c.n, rho, 1.0, 30), ProximateOrder::constant(rho), 1.0, 0.1,
                                  "axis family sigma=1", tol));
    }
    return out;
  });
  tasks.push_back([c, tol] {
    std::vector<CheckReport> out;
    const ProximateOrder po = ProximateOrder::constant(1.0);
    out.push_back(check_derivative_bound(detail::axis_series(c.n, 1.0, 1.0, 20), po, 1.0, 20, "axis family", tol));
    for (const auto& f : detail::default_series(c)) out.push_back(check_derivative_bound(f, po, 1.0, 20, "series", tol));
    return out;
  });
  tasks.push_back([c, tol] {
    return std::vector{check_monogenicity(3, 6, c.corrupt_fueter ? FactorSide::ordered : FactorSide::right, c.seed, tol)};
  });
  tasks.push_back([c] { return std::vector{check_op_round_trip(c.n, 6, 5, c.seed)}; });
  tasks.push_back([c, tol] {
    std::vector<CheckReport> out;
    for (const auto& po : c.orders) {
      out.push_back(check_phi_round_trip(po, po));
      out.push_back(check_supermultiplicativity(log_g_table(po, 100), po.describe(), tol));
      out.push_back(check_subadditive_power(scale_fn(po), po.rho(), po.describe(), 100.0, tol));
      for (double k : {2.0, 3.0}) out.push_back(check_scaling_bound(scale_fn(po), po.rho(), k, c.eta, po.describe(), 1e6, tol));
    }
    return out;
  });
  tasks.push_back([c, tol] {
    const ProximateOrder po = ProximateOrder::constant(1.0);
    return std::vector{check_tail_convergence(c.n, po, po, 1.0, 0.5, 40, tol)};
  });
  tasks.push_back([tol] {
    return std::vector{check_type_formula(1.0, 1.0, {200, 500}, 1.0, tol),
                       check_type_formula(2.0, 0.5, {200, 500}, 0.5, tol)};
  });
  tasks.push_back([tol] {
    return std::vector{check_vm_norm_bound(ProximateOrder::constant(1.0), 1.0, 0.5, 40, tol)};
  });
  tasks.push_back([tol] { return std::vector{check_y_sigma(ProximateOrder::constant(1.0), 1.0, 0.5, tol)}; });
  return tasks;
}

// The designated corrupted input of every check; each report must fail.
inline std::vector<CheckTask> negative_control_tasks(const VerifyConfig& c) {
  const double tol = c.tolerance;
  std::vector<CheckTask> tasks;
  tasks.push_back([c] { return std::vector{check_blackbox_agreement(c.n, 6, c.seed, Denominator::m_factorial)}; });
  tasks.push_back([c, tol] {
    // V_(3,0..) + 1/1000 checked against a modulus without its top coefficient.
    MultiIndex top(c.n);
    top = top + MultiIndex::unit(c.n, 1) + MultiIndex::unit(c.n, 1) + MultiIndex::unit(c.n, 1);
    MonogenicSeries<double> f(c.n, 3);
    f.set(top, CliffordNumber<double>::scalar(c.n, 1.0));
    f.set(MultiIndex(c.n), CliffordNumber<double>::scalar(c.n, 1e-3));
    const MonogenicSeries<double> g = f.truncated(2);
    return std::vector{check_cauchy(f, {0.5, 1.0, 2.0, 4.0}, &g, "modulus without top coefficient", tol)};
  });
  tasks.push_back([c, tol] {
    const ProximateOrder po = ProximateOrder::constant(1.0);
    const auto axis = detail::axis_series(c.n, 1.0, 1.0, 10);
    const auto forged = ck_mul_left(axis, axis).scaled(1e12);
    return std::vector{check_ck_norm_bound(axis, axis, po, 1.0, 1.0, c.delta, c.eta, &forged, "forged product", tol)};
  });
  tasks.push_back([c, tol] {
    const auto f = detail::axis_series(c.n, 1.0, 1.0, 20);
    const auto src = f.scaled(1e-30);
    return std::vector{check_coefficient_bound(f, ProximateOrder::constant(1.0), 1.0, c.n + 1.0, c.eta, &src,
                                             "norm of a different series", tol)};
  });
  tasks.push_back([c, tol] {
    return std::vector{check_density(detail::axis_series(c.n, 1.0, 1.0, 30), ProximateOrder::constant(1.0), 0.1,
                                     0.01, "type mislabeled as 0.1", tol)};
  });
  tasks.push_back([c, tol] {
    // Derivative inflated by (|m|!)^2.
    const auto forged = [](const MonogenicSeries<double>& f, const MultiIndex& m) {
      return series_derivative(f, m).scaled(std::exp(2.0 * std::lgamma(m.degree() + 1.0)));
    };
    return std::vector{check_derivative_bound(detail::axis_series(c.n, 1.0, 1.0, 20), ProximateOrder::constant(1.0),
                                              1.0, 20, "derivative scaled by |m|!^2", tol, forged)};
  });
  tasks.push_back([c, tol] { return std::vector{check_monogenicity(3, 6, FactorSide::ordered, c.seed, tol)}; });
  tasks.push_back([c] { return std::vector{check_op_round_trip(c.n, 6, 2, c.seed, false)}; });
  tasks.push_back([] {
    const ProximateOrder po = ProximateOrder::constant(1.0);
    return std::vector{check_phi_round_trip(po, ProximateOrder::constant(1.01))};
  });
  tasks.push_back([tol] {
    const ScaleFn exp_scale = [](double r) { return std::exp(r); };
    return std::vector{check_scaling_bound(exp_scale, 1.0, 2.0, 0.1, "t(r)=e^r", 100.0, tol),
                       check_subadditive_power(exp_scale, 1.0, "t(r)=e^r", 100.0, tol)};
  });
  tasks.push_back([tol] {
    std::vector<double> lg = log_g_table(ProximateOrder::constant(1.0), 100);
    lg[10] += 5.0;
    return std::vector{check_supermultiplicativity(lg, "constant:1 with ln G_10 raised by 5", tol)};
  });
  tasks.push_back([c, tol] {
    const ProximateOrder po = ProximateOrder::constant(1.0);
    return std::vector{check_tail_convergence(c.n, po, po, 1.0, 2.0, 40, tol)};
  });
  tasks.push_back([tol] { return std::vector{check_type_formula(1.0, 1.0, {200, 500}, 2.0, tol)}; });
  tasks.push_back([tol] {
    return std::vector{check_vm_norm_bound(ProximateOrder::constant(1.0), 1.0, 2.0, 40, tol)};
  });
  tasks.push_back([tol] { return std::vector{check_y_sigma(ProximateOrder::constant(1.0), 1.0, 2.0, tol)}; });
  return tasks;
}

// Tasks run concurrently; results are merged in name order.
inline std::vector<CheckReport> run_tasks(const std::vector<CheckTask>& tasks) {
  std::vector<std::future<std::vector<CheckReport>>> futures;
  futures.reserve(tasks.size());
  for (const auto& t : tasks) futures.push_back(std::async(std::launch::async, t));
  std::vector<CheckReport> out;
  for (auto& f : futures) {
    auto part = f.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return detail::sorted(std::move(out));
}

inline std::vector<CheckReport> run_all(const VerifyConfig& c) { return run_tasks(check_tasks(c)); }
inline std::vector<CheckReport> run_negative_controls(const VerifyConfig& c) {
  return run_tasks(negative_control_tasks(c));
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

inline std::string reports_json(const std::vector<CheckReport>& reports) {
  std::string s = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const CheckReport& r = reports[i];
    s += i ? ",\n  {" : "\n  {";
    s += "\"name\": " + json_string(r.name) + ", \"instance\": " + json_string(r.instance);
    s += ", \"margin\": " + json_number(r.margin) + ", \"pass\": " + (r.pass ? "true" : "false");
    s += ", \"constants\": {";
    for (std::size_t k = 0; k < r.constants.size(); ++k) {
      if (k) s += ", ";
      s += json_string(r.constants[k].first) + ": " + json_number(r.constants[k].second);
    }
    s += "}, \"note\": " + json_string(r.note) + "}";
  }
  return s + (reports.empty() ? "]\n" : "\n]\n");
}

inline std::string reports_table(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "check" << std::setw(6) << "pass" << std::setw(14) << "margin"
     << "instance\n";
  for (const CheckReport& r : reports) {
    os << std::left << std::setw(22) << r.name << std::setw(6) << (r.pass ? "yes" : "NO") << std::setw(14)
       << std::setprecision(6) << r.margin << r.instance;
    for (const auto& [k, v] : r.constants) os << "  " << k << "=" << std::setprecision(6) << v;
    os << "\n";
  }
  return os.str();
}

// {"n", "degree", "seed", "samples", "tolerance", "delta", "eta",
//  "orders": [proximate order objects], "series_file", "modulus_file",
//  "corrupt_fueter"}; file paths are relative to base_dir.
inline VerifyConfig verify_config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("verify config must be a JSON object");
  VerifyConfig c;
  auto get_int = [&](const char* key, int& dst) {
    if (auto it = j.find(key); it != j.end()) {
      if (!it->is_number_integer()) throw ParseError(std::string("config \"") + key + "\" must be an integer");
      dst = it->get<int>();
    }
  };
  auto get_double = [&](const char* key, double& dst) {
    if (auto it = j.find(key); it != j.end()) {
      if (!it->is_number()) throw ParseError(std::string("config \"") + key + "\" must be a number");
      dst = it->get<double>();
    }
  };
  get_int("n", c.n);
  get_int("degree", c.degree);
  get_int("samples", c.samples);
  int seed = static_cast<int>(c.seed);
  get_int("seed", seed);
  c.seed = static_cast<std::uint64_t>(seed);
  get_double("tolerance", c.tolerance);
  get_double("delta", c.delta);
  get_double("eta", c.eta);
  check_dimension(c.n);
  if (auto it = j.find("orders"); it != j.end()) {
    if (!it->is_array()) throw ParseError("config \"orders\" must be an array");
    c.orders.clear();
    for (const Json& po : *it) c.orders.push_back(proximate_order_from_json(po));
  }
  auto load_series = [&](const char* key) -> std::optional<MonogenicSeries<double>> {
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    const Json doc = parse_json(read_text_file((base_dir / it->get<std::string>()).string()));
    if (mode_of(doc) == Mode::exact) return series_from_json<Rational>(doc).to_float();
    return series_from_json<double>(doc);
  };
  c.series = load_series("series_file");
  c.modulus = load_series("modulus_file");
  if (auto it = j.find("corrupt_fueter"); it != j.end()) c.corrupt_fueter = it->get<bool>();
  return c;
}

}  // namespace monogenic
