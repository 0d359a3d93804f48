// Evolves one walk four ways and prints the PMF next to the largest
// disagreement between the routes.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
  using namespace qwalk;
  const CoinParameters p(pi / 6, 0.0, pi / 6);
  const std::size_t t = 30;

  const WalkerState oracle = evolve(p, t);
  const WalkerState closed = closed_form_state(p, t, minimal_transform_size(t));
  const WalkerState fft = spectral_state(p, t, pow2_transform_size(t));
  const WalkerState kernel = state_via_lambda(p, t, lambda_table_recursive(p.theta(), t + 1));

  const PmfSeries rho = pmf(oracle);
  for (std::size_t n = 0; n <= t; ++n) std::printf("%2zu  %.12f\n", n, rho.values[n]);
  std::printf("closed   %.2e\n", max_component_difference(oracle, closed));
  std::printf("fft      %.2e\n", max_component_difference(oracle, fft));
  std::printf("lambda   %.2e\n", max_component_difference(oracle, kernel));
  std::printf("<X>_t    %.12f\n", position_mean(rho));
}
