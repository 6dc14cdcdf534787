#pragma once

// Canonical JSON files for Clifford numbers, series, operators, homomorphism
// tables, proximate orders and coefficient-norm tables, plus the growth CSV.
//
// Emission is hand-written so that output is byte-stable: coefficients in
// lexicographic m order, blade keys sorted as strings, floats with %.17g and
// exact scalars always as "p/q". Parsing goes through nlohmann::json.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "errors.hpp"
#include "growth.hpp"
#include "multiindex.hpp"
#include "operator.hpp"
#include "scalar.hpp"
#include "series.hpp"

namespace monogenic {

using Json = nlohmann::json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// 1-based line containing byte offset `pos`.
inline int line_of_offset(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("malformed JSON", line_of_offset(text, at));
  }
}

// JSON number text; non-finite values are clamped to +-1e300.
inline std::string json_number(double v) {
  if (std::isnan(v)) v = 0.0;
  v = std::clamp(v, -1e300, 1e300);
  return ScalarTraits<double>::format(v);
}

inline std::string json_string(const std::string& s) { return Json(s).dump(); }

template <Scalar T>
std::string json_scalar(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return json_number(v);
  } else {
    return json_string(ScalarTraits<T>::format(v));
  }
}

template <Scalar T>
std::string emit_clifford(const CliffordNumber<T>& c) {
  std::vector<std::pair<std::string, BladeMask>> keys;
  for (BladeMask k = 0; k < c.blade_count(); ++k) {
    if (!ScalarTraits<T>::is_zero(c[k])) keys.emplace_back(blade_name(k), k);
  }
  std::sort(keys.begin(), keys.end());
  std::string s = "{";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) s += ", ";
    s += json_string(keys[i].first) + ": " + json_scalar(c[keys[i].second]);
  }
  return s + "}";
}

inline std::string emit_index(const MultiIndex& m) {
  std::string s = "[";
  for (int i = 0; i < m.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(m[i]);
  }
  return s + "]";
}

template <Scalar T>
std::string emit_series(const MonogenicSeries<T>& f, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string s = "{\n";
  s += pad + "  \"n\": " + std::to_string(f.dimension()) + ",\n";
  s += pad + "  \"degree\": " + std::to_string(f.max_degree()) + ",\n";
  s += pad + "  \"mode\": \"" + std::string(mode_name(ScalarTraits<T>::mode)) + "\",\n";
  s += pad + "  \"coeffs\": [";
  bool first = true;
  for (const auto& [m, a] : f.coefficients()) {
    s += first ? "\n" : ",\n";
    first = false;
    s += pad + "    {\"m\": " + emit_index(m) + ", \"value\": " + emit_clifford(a) + "}";
  }
  s += first ? "]\n" : "\n" + pad + "  ]\n";
  return s + pad + "}";
}

namespace detail {

template <Scalar T>
std::string emit_table(int n, const std::map<MultiIndex, MonogenicSeries<T>>& table, const char* key,
                       const char* value_key) {
  std::string s = "{\n  \"n\": " + std::to_string(n) + ",\n  \"entries\": [";
  bool first = true;
  for (const auto& [m, u] : table) {
    s += first ? "\n" : ",\n";
    first = false;
    s += "    {\"" + std::string(key) + "\": " + emit_index(m) + ", \"" + value_key + "\": " + emit_series(u, 4) + "}";
  }
  s += first ? "]\n" : "\n  ]\n";
  return s + "}\n";
}

}  // namespace detail

template <Scalar T>
std::string emit_operator(const OperatorSymbol<T>& p) {
  return detail::emit_table(p.dimension(), p.entries(), "m", "u");
}

template <Scalar T>
std::string emit_hom_table(const HomTable<T>& h) {
  return detail::emit_table(h.dimension(), h.entries(), "p", "b");
}

inline std::string emit_proximate_order(const ProximateOrder& po) {
  return "{\"family\": " + json_string(family_name(po.family())) + ", \"rho\": " + json_number(po.rho()) +
         ", \"a\": " + json_number(po.a()) + "}\n";
}

inline std::string emit_norms(const LogCoefficientTable& t) {
  std::string s = "{\n  \"n\": " + std::to_string(t.n) + ",\n  \"log_norms\": [";
  bool first = true;
  for (const auto& [m, ln] : t.log_norm) {
    s += first ? "\n" : ",\n";
    first = false;
    s += "    {\"m\": " + emit_index(m) + ", \"ln_norm\": " + json_number(ln) + "}";
  }
  s += first ? "]\n" : "\n  ]\n";
  return s + "}\n";
}

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(what) + " lacks \"" + key + "\"");
  return *it;
}

inline int int_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " field \"" + key + "\" must be an integer");
  return v.get<int>();
}

inline MultiIndex index_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("multi-index must be an array of integers");
  std::vector<int> e;
  for (const Json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError("multi-index entries must be integers >= 0");
    e.push_back(v.get<int>());
  }
  if (static_cast<int>(e.size()) != n) {
    throw DimensionError("multi-index " + j.dump() + " has length " + std::to_string(e.size()) + ", expected " +
                         std::to_string(n));
  }
  return MultiIndex(std::move(e));
}

template <Scalar T>
T scalar_from_json(const Json& v) {
  if (v.is_string()) {
    const Rational q = ScalarTraits<Rational>::parse(v.get<std::string>());
    return to_scalar<T>(q);
  }
  if (!v.is_number()) throw ParseError("coefficient must be a number or a \"p/q\" string");
  if constexpr (std::is_same_v<T, double>) {
    return v.get<double>();
  } else {
    if (!v.is_number_integer()) throw ParseError("exact mode needs integers or \"p/q\" strings, got " + v.dump());
    return Rational(v.get<long>());
  }
}

}  // namespace detail

template <Scalar T>
CliffordNumber<T> clifford_from_json(const Json& j, int n) {
  if (!j.is_object()) throw ParseError("Clifford value must be an object of blade: number");
  CliffordNumber<T> c(n);
  for (const auto& [key, v] : j.items()) c.at(parse_blade(n, key)) = detail::scalar_from_json<T>(v);
  return c;
}

inline Mode mode_of(const Json& series) {
  const Json& m = detail::field(series, "mode", "series");
  if (!m.is_string()) throw ParseError("series \"mode\" must be a string");
  return parse_mode(m.get<std::string>());
}

template <Scalar T>
MonogenicSeries<T> series_from_json(const Json& j) {
  const int n = detail::int_field(j, "n", "series");
  const int degree = detail::int_field(j, "degree", "series");
  if (mode_of(j) != ScalarTraits<T>::mode) {
    throw ParseError("series is in " + std::string(mode_name(mode_of(j))) + " mode, expected " +
                     std::string(mode_name(ScalarTraits<T>::mode)));
  }
  check_dimension(n);
  if (degree < 0) throw ParseError("series degree must be >= 0");
  MonogenicSeries<T> f(n, degree);
  const Json& coeffs = detail::field(j, "coeffs", "series");
  if (!coeffs.is_array()) throw ParseError("series \"coeffs\" must be an array");
  for (const Json& entry : coeffs) {
    const MultiIndex m = detail::index_from_json(detail::field(entry, "m", "coefficient"), n);
    if (m.degree() > degree) {
      throw ParseError("coefficient " + m.to_string() + " exceeds degree " + std::to_string(degree));
    }
    if (!f.coefficient(m).is_zero()) throw ParseError("duplicate coefficient " + m.to_string());
    f.set(m, clifford_from_json<T>(detail::field(entry, "value", "coefficient"), n));
  }
  return f;
}

template <Scalar T>
OperatorSymbol<T> operator_from_json(const Json& j) {
  const int n = detail::int_field(j, "n", "operator");
  check_dimension(n);
  OperatorSymbol<T> p(n);
  const Json& entries = detail::field(j, "entries", "operator");
  if (!entries.is_array()) throw ParseError("operator \"entries\" must be an array");
  for (const Json& e : entries) {
    const MultiIndex m = detail::index_from_json(detail::field(e, "m", "operator entry"), n);
    MonogenicSeries<T> u = series_from_json<T>(detail::field(e, "u", "operator entry"));
    if (u.dimension() != n) throw DimensionError("operator entry " + m.to_string() + " has a different dimension");
    p.set(m, std::move(u));
  }
  return p;
}

// The degree bound is the largest |p| present; completeness is checked.
template <Scalar T>
HomTable<T> hom_table_from_json(const Json& j) {
  const int n = detail::int_field(j, "n", "table");
  check_dimension(n);
  const Json& entries = detail::field(j, "entries", "table");
  if (!entries.is_array()) throw ParseError("table \"entries\" must be an array");
  std::vector<std::pair<MultiIndex, MonogenicSeries<T>>> items;
  int degree = 0;
  for (const Json& e : entries) {
    MultiIndex p = detail::index_from_json(detail::field(e, "p", "table entry"), n);
    MonogenicSeries<T> b = series_from_json<T>(detail::field(e, "b", "table entry"));
    if (b.dimension() != n) throw DimensionError("table entry " + p.to_string() + " has a different dimension");
    degree = std::max(degree, p.degree());
    items.emplace_back(std::move(p), std::move(b));
  }
  HomTable<T> h(n, degree);
  for (auto& [p, b] : items) h.set(p, std::move(b));
  h.check_complete();
  return h;
}

inline ProximateOrder proximate_order_from_json(const Json& j) {
  const Json& fam = detail::field(j, "family", "proximate order");
  const Json& rho = detail::field(j, "rho", "proximate order");
  if (!fam.is_string() || !rho.is_number()) throw ParseError("proximate order needs string family and numeric rho");
  double a = 0.0;
  if (auto it = j.find("a"); it != j.end()) {
    if (!it->is_number()) throw ParseError("proximate order \"a\" must be a number");
    a = it->get<double>();
  }
  std::optional<double> cutover;
  if (auto it = j.find("cutover"); it != j.end()) cutover = it->get<double>();
  return ProximateOrder::make(parse_family(fam.get<std::string>()), rho.get<double>(), a, cutover);
}

inline LogCoefficientTable norms_from_json(const Json& j) {
  const int n = detail::int_field(j, "n", "norms table");
  if (n < 1) throw DimensionError("norms table needs n >= 1");
  LogCoefficientTable t{n, {}};
  const Json& rows = detail::field(j, "log_norms", "norms table");
  if (!rows.is_array()) throw ParseError("\"log_norms\" must be an array");
  for (const Json& r : rows) {
    const MultiIndex m = detail::index_from_json(detail::field(r, "m", "norm entry"), n);
    const Json& v = detail::field(r, "ln_norm", "norm entry");
    if (!v.is_number()) throw ParseError("\"ln_norm\" must be a number");
    if (!t.log_norm.emplace(m, v.get<double>()).second) throw ParseError("duplicate norm entry " + m.to_string());
  }
  return t;
}

// ---------------------------------------------------------------------------

inline std::string growth_csv(const GrowthReport& rep) {
  std::ostringstream os;
  os << "q,ln_Kq_lower,ln_Kq_upper,ln_Gq,kq_rhs,membership_value\n";
  for (const GrowthRow& r : rep.rows) {
    os << r.q << ',' << ScalarTraits<double>::format(r.ln_kq_lower) << ','
       << ScalarTraits<double>::format(r.ln_kq_upper) << ',' << ScalarTraits<double>::format(r.ln_gq) << ','
       << ScalarTraits<double>::format(r.kq_rhs) << ',' << ScalarTraits<double>::format(r.membership_value)
       << '\n';
  }
  return os.str();
}

inline std::string growth_summary_json(const GrowthReport& rep) {
  auto opt = [](const std::optional<double>& v) { return v ? json_number(*v) : std::string("null"); };
  std::string s = "{\n";
  s += "  \"proximate_order\": " + json_string(rep.po.describe()) + ",\n";
  s += "  \"window\": [" + std::to_string(rep.window.q0) + ", " + std::to_string(rep.window.q1) + "],\n";
  s += "  \"order_estimate\": " + opt(rep.order_estimate) + ",\n";
  s += "  \"type_estimate\": " + opt(rep.type_estimate) + ",\n";
  s += "  \"membership_kq\": " + json_number(rep.membership.kq_value) + ",\n";
  s += "  \"membership_kq_lower\": " + json_number(rep.membership.kq_value_lower) + ",\n";
  s += "  \"membership_coeff\": " + json_number(rep.membership.coeff_value) + ",\n";
  s += "  \"membership_coeff_slack\": " + json_number(rep.membership.coeff_slack) + ",\n";
  s += "  \"sigma_tested\": " + json_number(rep.sigma_tested) + ",\n";
  s += "  \"member\": " + std::string(rep.member ? "true" : "false") + "\n";
  return s + "}\n";
}

}  // namespace monogenic
