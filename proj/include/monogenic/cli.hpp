#pragma once

// Command-line surface. run_cli parses argv with CLI11 and dispatches to the
// cmd_* functions, which are usable directly from tests.
//
// Exit codes: 0 ok, 1 a verify check failed, 2 usage, parse or dimension error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "growth.hpp"
#include "io.hpp"
#include "operator.hpp"
#include "series.hpp"
#include "verify.hpp"

namespace monogenic {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct CliConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string out;  // empty: stdout
  std::string mode = "auto";
  std::uint64_t seed = 1;
  int samples = 256;
  std::optional<int> q_out;
  std::string point;
  std::string index;
  std::string po = "constant:1";
  std::string window = "1:100";
  double sigma = 1.0;
  bool list = false;
  bool negative = false;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

inline Json load_json(const std::string& path) { return parse_json(read_text_file(path)); }

inline void emit_to(const CliConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_file(c.out, text);
  }
}

// Mode of a series, operator or table document.
inline Mode document_mode(const Json& j) {
  if (j.contains("mode")) return mode_of(j);
  if (auto it = j.find("entries"); it != j.end() && it->is_array() && !it->empty()) {
    const Json& e = it->front();
    if (e.contains("u")) return mode_of(e.at("u"));
    if (e.contains("b")) return mode_of(e.at("b"));
  }
  return Mode::exact;
}

// All inputs must agree with each other and with --mode unless it is "auto".
inline Mode resolve_mode(const CliConfig& c, const std::vector<Json>& docs) {
  std::optional<Mode> mode;
  if (c.mode != "auto") mode = parse_mode(c.mode);
  for (const Json& d : docs) {
    if (!d.is_object()) throw ParseError("input must be a JSON object");
    const Mode m = document_mode(d);
    if (mode && *mode != m) {
      throw ParseError("inputs mix " + std::string(mode_name(*mode)) + " and " + std::string(mode_name(m)) +
                       " mode");
    }
    mode = m;
  }
  return mode.value_or(Mode::exact);
}

template <Scalar T>
Paravector<T> parse_point(const std::string& s, int n) {
  const auto parts = split(s, ',');
  if (static_cast<int>(parts.size()) != n + 1) {
    throw DimensionError("point needs " + std::to_string(n + 1) + " components x0,x1,..,xn");
  }
  Paravector<T> x{T{}, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    T v;
    if constexpr (std::is_same_v<T, double>) {
      std::size_t used = 0;
      try {
        v = std::stod(parts[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != parts[i].size() || parts[i].empty()) throw ParseError("bad point component '" + parts[i] + "'");
    } else {
      v = ScalarTraits<Rational>::parse(parts[i]);
    }
    if (i == 0) {
      x.x0 = v;
    } else {
      x.xv.push_back(v);
    }
  }
  return x;
}

inline MultiIndex parse_index(const std::string& s) {
  std::vector<int> e;
  for (const auto& part : split(s, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || v < 0) throw ParseError("bad index component '" + part + "'");
    e.push_back(v);
  }
  return MultiIndex(std::move(e));
}

inline void need_inputs(const CliConfig& c, std::size_t k) {
  if (c.inputs.size() != k) {
    throw CLI::ValidationError(c.subcommand + " expects " + std::to_string(k) + " input file(s)");
  }
}

template <Scalar T>
void same_dimension(const MonogenicSeries<T>& a, int n) {
  if (a.dimension() != n) throw DimensionError("inputs live in different dimensions");
}

}  // namespace detail

template <Scalar T>
int cmd_eval_t(const CliConfig& c, const Json& doc, std::ostream& out) {
  const MonogenicSeries<T> f = series_from_json<T>(doc);
  const Paravector<T> x = detail::parse_point<T>(c.point, f.dimension());
  detail::emit_to(c, emit_clifford(series_eval(f, x)) + "\n", out);
  return kExitOk;
}

inline int cmd_eval(const CliConfig& c, std::ostream& out) {
  detail::need_inputs(c, 1);
  const Json doc = detail::load_json(c.inputs[0]);
  if (detail::resolve_mode(c, {doc}) == Mode::exact) return cmd_eval_t<Rational>(c, doc, out);
  return cmd_eval_t<double>(c, doc, out);
}

template <Scalar T>
int cmd_ckprod_t(const CliConfig& c, const Json& a, const Json& b, std::ostream& out) {
  const MonogenicSeries<T> f = series_from_json<T>(a);
  const MonogenicSeries<T> g = series_from_json<T>(b);
  detail::same_dimension(g, f.dimension());
  const MonogenicSeries<T> h = c.q_out ? ck_mul_left(f, g, *c.q_out) : ck_mul_left(f, g);
  detail::emit_to(c, emit_series(h) + "\n", out);
  return kExitOk;
}

inline int cmd_ckprod(const CliConfig& c, std::ostream& out) {
  detail::need_inputs(c, 2);
  const Json a = detail::load_json(c.inputs[0]);
  const Json b = detail::load_json(c.inputs[1]);
  if (detail::resolve_mode(c, {a, b}) == Mode::exact) return cmd_ckprod_t<Rational>(c, a, b, out);
  return cmd_ckprod_t<double>(c, a, b, out);
}

template <Scalar T>
int cmd_diff_t(const CliConfig& c, const Json& doc, std::ostream& out) {
  const MonogenicSeries<T> f = series_from_json<T>(doc);
  detail::emit_to(c, emit_series(series_derivative(f, detail::parse_index(c.index))) + "\n", out);
  return kExitOk;
}

inline int cmd_diff(const CliConfig& c, std::ostream& out) {
  detail::need_inputs(c, 1);
  const Json doc = detail::load_json(c.inputs[0]);
  if (detail::resolve_mode(c, {doc}) == Mode::exact) return cmd_diff_t<Rational>(c, doc, out);
  return cmd_diff_t<double>(c, doc, out);
}

// Input is either a series or a {"n", "log_norms"} table. The CSV goes to
// --out (or stdout); the summary goes next to it as <stem>.summary.json
// (or after the CSV on stdout).
inline int cmd_growth(const CliConfig& c, std::ostream& out) {
  detail::need_inputs(c, 1);
  const Json doc = detail::load_json(c.inputs[0]);
  if (!doc.is_object()) throw ParseError("growth input must be a JSON object");
  const ProximateOrder po = parse_proximate_order(c.po);
  const Window w = parse_window(c.window);
  LogCoefficientTable table;
  KqTable kq;
  if (doc.contains("log_norms")) {
    table = norms_from_json(doc);
    kq = kq_table(table);
  } else {
    const MonogenicSeries<double> f = detail::resolve_mode(c, {doc}) == Mode::exact
                                          ? series_from_json<Rational>(doc).to_float()
                                          : series_from_json<double>(doc);
    table = log_coefficients(f);
    kq = kq_table(f, c.samples, c.seed);
  }
  const GrowthReport rep = growth_report(table, kq, po, w, c.sigma);
  if (c.out.empty()) {
    out << growth_csv(rep) << "\n" << growth_summary_json(rep);
  } else {
    write_text_file(c.out, growth_csv(rep));
    std::filesystem::path summary(c.out);
    summary.replace_extension(".summary.json");
    write_text_file(summary.string(), growth_summary_json(rep));
  }
  return kExitOk;
}

template <Scalar T>
int cmd_apply_t(const CliConfig& c, const Json& op, const Json& series, std::ostream& out) {
  const OperatorSymbol<T> p = operator_from_json<T>(op);
  const MonogenicSeries<T> f = series_from_json<T>(series);
  if (p.dimension() != f.dimension()) throw DimensionError("operator and series live in different dimensions");
  const int q_out = c.q_out.value_or(f.max_degree());
  detail::emit_to(c, emit_series(op_apply(p, f, q_out)) + "\n", out);
  return kExitOk;
}

inline int cmd_apply(const CliConfig& c, std::ostream& out) {
  detail::need_inputs(c, 2);
  const Json op = detail::load_json(c.inputs[0]);
  const Json series = detail::load_json(c.inputs[1]);
  if (detail::resolve_mode(c, {op, series}) == Mode::exact) return cmd_apply_t<Rational>(c, op, series, out);
  return cmd_apply_t<double>(c, op, series, out);
}

template <Scalar T>
int cmd_hom2op_t(const CliConfig& c, const Json& doc, std::ostream& out) {
  detail::emit_to(c, emit_operator(hom_to_op(hom_table_from_json<T>(doc))), out);
  return kExitOk;
}

inline int cmd_hom2op(const CliConfig& c, std::ostream& out) {
  detail::need_inputs(c, 1);
  const Json doc = detail::load_json(c.inputs[0]);
  if (detail::resolve_mode(c, {doc}) == Mode::exact) return cmd_hom2op_t<Rational>(c, doc, out);
  return cmd_hom2op_t<double>(c, doc, out);
}

template <Scalar T>
int cmd_op2hom_t(const CliConfig& c, const Json& doc, std::ostream& out) {
  const OperatorSymbol<T> p = operator_from_json<T>(doc);
  const int degree = c.q_out.value_or(std::max(p.order(), 0));
  detail::emit_to(c, emit_hom_table(op_to_hom(p, degree)), out);
  return kExitOk;
}

inline int cmd_op2hom(const CliConfig& c, std::ostream& out) {
  detail::need_inputs(c, 1);
  const Json doc = detail::load_json(c.inputs[0]);
  if (detail::resolve_mode(c, {doc}) == Mode::exact) return cmd_op2hom_t<Rational>(c, doc, out);
  return cmd_op2hom_t<double>(c, doc, out);
}

// The table goes to stdout; --out receives the JSON report.
inline int cmd_verify(const CliConfig& c, std::ostream& out) {
  if (c.list) {
    for (const auto& name : check_names()) out << name << "\n";
    return kExitOk;
  }
  if (c.inputs.size() > 1) throw CLI::ValidationError("verify takes at most one config file");
  VerifyConfig config;
  if (!c.inputs.empty()) {
    const std::filesystem::path path(c.inputs[0]);
    config = verify_config_from_json(detail::load_json(path.string()), path.parent_path());
  }
  const auto reports = c.negative ? run_negative_controls(config) : run_all(config);
  out << reports_table(reports);
  if (!c.out.empty()) write_text_file(c.out, reports_json(reports));
  return all_pass(reports) ? kExitOk : kExitCheckFailed;
}

inline int dispatch(const CliConfig& c, std::ostream& out) {
  if (c.subcommand == "eval") return cmd_eval(c, out);
  if (c.subcommand == "ckprod") return cmd_ckprod(c, out);
  if (c.subcommand == "diff") return cmd_diff(c, out);
  if (c.subcommand == "growth") return cmd_growth(c, out);
  if (c.subcommand == "apply") return cmd_apply(c, out);
  if (c.subcommand == "hom2op") return cmd_hom2op(c, out);
  if (c.subcommand == "op2hom") return cmd_op2hom(c, out);
  if (c.subcommand == "verify") return cmd_verify(c, out);
  throw CLI::ValidationError("unknown subcommand '" + c.subcommand + "'");
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Monogenic series, growth scales and operators over Clifford algebras", "monogenic"};
  app.require_subcommand(1);
  app.add_option("--mode", c.mode, "exact | float | auto")->check(CLI::IsMember({"exact", "float", "auto"}));
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--samples", c.samples, "sphere samples per radius")->check(CLI::PositiveNumber);
  app.add_option("--window", c.window, "degree window q0:q1");
  app.add_option("--po", c.po, "proximate order family:rho[:a]");
  app.add_option("-o,--out", c.out, "output file");

  struct Sub {
    const char* name;
    const char* help;
    int files;  // -1: optional
  };
  const Sub subs[] = {
      {"eval", "evaluate a series at a paravector point", 1},
      {"ckprod", "left CK-product of two series", 2},
      {"diff", "partial derivative of a series", 1},
      {"growth", "order, type and membership estimates", 1},
      {"apply", "apply an operator symbol to a series", 2},
      {"hom2op", "homomorphism table to operator symbol", 1},
      {"op2hom", "operator symbol to homomorphism table", 1},
      {"verify", "run the inequality checks", -1},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    auto* files = sub->add_option("files", c.inputs, "input files");
    if (s.files > 0) files->required()->expected(s.files);
    const std::string name = s.name;
    if (name == "eval") sub->add_option("--point", c.point, "x0,x1,..,xn")->required();
    if (name == "diff") sub->add_option("--index", c.index, "m1,..,mn")->required();
    if (name == "ckprod" || name == "apply") sub->add_option("--q-out", c.q_out, "output degree bound");
    if (name == "op2hom") sub->add_option("--degree", c.q_out, "table degree bound");
    if (name == "growth") sub->add_option("--sigma", c.sigma, "type tested for membership");
    if (name == "verify") {
      sub->add_flag("--list", c.list, "print check names");
      sub->add_flag("--negative", c.negative, "run the corrupted-input controls");
    }
    sub->callback([&c, name] { c.subcommand = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    return dispatch(c, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
  } catch (const IncompleteTable& e) {
    err << "incomplete table: " << e.what() << "\n";
  } catch (const UndefinedEstimate& e) {
    err << "undefined estimate: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace monogenic
