// Order and type of a synthetic series with known growth.
#include <cstdio>

#include "monogenic.hpp"

using namespace monogenic;

int main() {
  const double rho = 2.0, sigma = 0.5;
  const LogCoefficientTable t = axis_family(2, rho, sigma, 500);
  const ProximateOrder po = ProximateOrder::constant(rho);

  const OrderEstimate order = order_from_coeffs(t, {100, 200});
  std::printf("order estimate %.4f (true %.1f)\n", order.rho, rho);
  std::printf("type from coefficients %.4f\n", type_from_coeffs(t, rho, {200, 500}));
  std::printf("type from K_q          %.4f (true %.2f)\n", type_from_kq(kq_table(t), po, {200, 500}), sigma);

  const GrowthReport rep = growth_report(t, kq_table(t), po, {200, 500}, sigma);
  std::printf("membership surrogate   %.4f\n", rep.membership.kq_value);
}
