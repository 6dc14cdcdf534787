#pragma once

#include <stdexcept>
#include <string>

namespace monogenic {

// Operands live in Clifford algebras of different dimension, or an index
// does not fit the algebra.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A growth estimator was asked for a limit over a window that carries no data.
class UndefinedEstimate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A structural invariant (monotone normalization, bracketing, ...) failed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A homomorphism table does not cover every index up to its degree bound.
class IncompleteTable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace monogenic
