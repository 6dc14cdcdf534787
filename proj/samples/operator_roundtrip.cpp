// Operator symbol -> homomorphism table -> operator symbol, exactly.
#include <iostream>
#include <random>

#include "monogenic.hpp"

using namespace monogenic;

int main() {
  std::mt19937_64 rng(7);
  const OperatorSymbol<Rational> p = random_operator(2, 3, 2, rng);
  const HomTable<Rational> h = op_to_hom(p, 6);
  const OperatorSymbol<Rational> back = hom_to_op(h);
  std::cout << "order " << p.order() << ", round trip " << (back == p ? "exact" : "differs") << "\n";

  // Rebuild an operator from its action on the Fueter basis alone.
  // Degree 8 keeps every output term: coefficients have degree <= 2.
  const BlackBox<Rational> f = [&p](const MonogenicSeries<Rational>& s) { return op_apply(p, s, 8); };
  const OperatorSymbol<Rational> q = reconstruct_from_blackbox(f, 2, 6);
  std::cout << "reconstructed " << (q == p ? "exactly" : "with differences") << ", disagreement on |s| <= 6: "
            << polynomial_disagreement(q, f, 6, 8) << "\n";
}
