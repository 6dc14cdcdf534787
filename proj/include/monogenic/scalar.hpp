#pragma once

// Scalar fields for Clifford coefficients: exact rationals (GMP) and binary64.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdio>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace monogenic {

using Rational = mpq_class;
using BigInt = mpz_class;

enum class Mode { exact, floating };

inline std::string_view mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw ParseError("unknown mode '" + std::string(s) + "' (expected exact|float)");
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr Mode mode = Mode::floating;

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double to_double(double v) { return v; }
  static bool is_zero(double v) { return v == 0.0; }

  // 17 significant digits round-trips every binary64 value.
  static std::string format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode mode = Mode::exact;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }

  // Always "p/q", including q = 1.
  static std::string format(const Rational& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
  }

  static Rational parse(std::string_view s) {
    Rational q;
    if (s.empty() || q.set_str(std::string(s), 10) != 0) {
      throw ParseError("malformed rational '" + std::string(s) + "'");
    }
    if (sgn(q.get_den()) == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    q.canonicalize();
    return q;
  }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::mode; };

template <Scalar T>
T to_scalar(const Rational& q) {
  return ScalarTraits<T>::from_rational(q);
}

template <Scalar T>
double as_double(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

}  // namespace monogenic
