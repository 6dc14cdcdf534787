// Fueter polynomials, evaluation and the CK-product in R_2.
#include <iostream>

#include "monogenic.hpp"

using namespace monogenic;

int main() {
  using Q = Rational;
  const int n = 2;

  // V_(1,1)(x) at x = 1 + 2 e1 - e2.
  MonogenicSeries<Q> v11(n, 2);
  v11.set(MultiIndex({1, 1}), CliffordNumber<Q>::scalar(n, Q(1)));
  const Paravector<Q> x{Q(1), {Q(2), Q(-1)}};
  std::cout << "V_(1,1)(x) = " << emit_clifford(series_eval(v11, x)) << "\n";

  // The derivative rule: d/dx1 V_(1,1) = V_(0,1).
  std::cout << "d1 V_(1,1) =\n" << emit_series(series_derivative(v11, MultiIndex({1, 0})).canonical()) << "\n";

  // CK-product of V_(1,0) and V_(0,1): (1/2) V_(1,1) up to the binomial weight.
  MonogenicSeries<Q> a(n, 1), b(n, 1);
  a.set(MultiIndex({1, 0}), CliffordNumber<Q>::scalar(n, Q(1)));
  b.set(MultiIndex({0, 1}), CliffordNumber<Q>::scalar(n, Q(1)));
  std::cout << "V_(1,0) (.) V_(0,1) =\n" << emit_series(ck_mul_left(a, b)) << "\n";
}
