// Exact PMF at large t against the envelope band and the weak-limit density.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
  using namespace qwalk;
  const CoinParameters p(pi / 6, pi, pi / 6);
  const std::size_t t = 400;

  const SymmetryVerdict v = classify_symmetry(p, t);
  std::printf("family %s, reflection residual %.3e\n", std::string(to_string(v.family)).c_str(),
              v.reflection_residual);

  const PmfSeries rho = pmf(spectral_state(p, t, pow2_transform_size(t)));
  const AsymptoticProfile prof = rho_bounds(p, t, guarded_grid(p.theta(), t, default_guard(t)));
  const StationaryDensity density(p);
  std::printf("   n      rho        inf        sup     density\n");
  for (std::size_t i = 0; i < prof.ns.size(); i += 10) {
    const auto n = static_cast<std::size_t>(prof.ns[i]);
    const double eps = rescaled_position(p.theta(), prof.nus[i]);
    std::printf("%4zu  %.3e  %.3e  %.3e  %.4f\n", n, rho.values[n], prof.rho_inf[i], prof.rho_sup[i],
                density(eps));
  }
  std::printf("density mass %.12f\n", density.total_mass());
}
