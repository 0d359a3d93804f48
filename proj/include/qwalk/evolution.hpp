// Step-by-step evolution of the walker: the brute-force reference
// every other route is checked against.
// psi_0(n, t+1) = cos(theta) psi_0(n, t) + e^{-i varphi} sin(theta) psi_1(n, t)
// psi_1(n, t+1) = e^{i varphi} sin(theta) psi_0(n-1, t) - cos(theta) psi_1(n-1, t)
// Norm drift is measured, never corrected.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "qwalk/core.hpp"

namespace qwalk {

/// Largest tolerated |norm - 1| before evolve() reports a failure.
inline constexpr double kNormDriftLimit = 1e-10;

/// One application of coin then shift.  Returns a fresh state at t+1.
inline WalkerState step(const WalkerState& s, const CoinMatrix& coin) {
  WalkerState next = WalkerState::zero(s.t + 1);
  const std::size_t sites = s.sites();
  for (std::size_t n = 0; n < sites; ++n) {
    const auto [stay, move] = coin.apply(s.amp0[n], s.amp1[n]);
    next.amp0[n] = stay;
    next.amp1[n + 1] = move;
  }
  return next;
}

/// Evolution outcome together with the worst norm drift seen along the way.
struct MonitoredEvolution {
  WalkerState state;
  double max_norm_drift = 0.0;
};

/**
 * Evolves the initial state t steps.  `visit(const WalkerState&)` is called
 * on every intermediate state including t = 0 and the final one.
 */
template <typename Visitor>
MonitoredEvolution evolve_visiting(const CoinParameters& p, std::size_t t, Visitor&& visit) {
  const CoinMatrix coin = make_coin(p);
  MonitoredEvolution out{make_initial_state(p), 0.0};
  out.max_norm_drift = std::abs(norm_squared(out.state) - 1.0);
  visit(out.state);
  for (std::size_t k = 0; k < t; ++k) {
    out.state = step(out.state, coin);
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(norm_squared(out.state) - 1.0));
    visit(out.state);
  }
  return out;
}

inline MonitoredEvolution evolve_monitored(const CoinParameters& p, std::size_t t) {
  return evolve_visiting(p, t, [](const WalkerState&) {});
}

/// State at time t.  Throws std::runtime_error if the norm drifted past kNormDriftLimit.
inline WalkerState evolve(const CoinParameters& p, std::size_t t) {
  MonitoredEvolution run = evolve_monitored(p, t);
  if (run.max_norm_drift > kNormDriftLimit) {
    throw std::runtime_error("norm drift " + std::to_string(run.max_norm_drift) +
                             " exceeded limit during evolution to t=" + std::to_string(t));
  }
  return std::move(run.state);
}

inline PmfSeries pmf(const WalkerState& s, Method method = Method::oracle) {
  PmfSeries out{s.t, std::vector<double>(s.sites()), method};
  for (std::size_t n = 0; n < s.sites(); ++n) {
    out.values[n] = std::norm(s.amp0[n]) + std::norm(s.amp1[n]);
  }
  return out;
}

}  // namespace qwalk
