// Probability current, continuity, Ehrenfest increments, midpoint
// reflection symmetry and the fair-coin expectation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

/// J(n, t) = |psi_1(n+1, t+1)|^2 for n = 0..t, read off the state at t+1.
inline std::vector<double> probability_current(const WalkerState& next) {
  if (next.t == 0) throw std::invalid_argument("probability current needs the state at t+1 >= 1");
  std::vector<double> j(next.t);
  for (std::size_t n = 0; n < next.t; ++n) j[n] = std::norm(next.amp1[n + 1]);
  return j;
}

/// J(n, t) = |e^{i varphi} sin(theta) psi_0(n,t) - cos(theta) psi_1(n,t)|^2 from the state at t.
inline std::vector<double> probability_current_local(const WalkerState& s, const CoinMatrix& coin) {
  std::vector<double> j(s.sites());
  for (std::size_t n = 0; n < s.sites(); ++n) {
    j[n] = std::norm(coin.u10 * s.amp0[n] + coin.u11 * s.amp1[n]);
  }
  return j;
}

/**
 * max_n |rho(n,t+1) - rho(n,t) - J(n-1,t) + J(n,t)| over n = 0..t+1, with J
 * taken from `next`.  A pair from different instances gives an O(1) value.
 */
inline double continuity_residual(const WalkerState& now, const WalkerState& next) {
  if (next.t != now.t + 1) {
    throw std::invalid_argument("continuity check needs states at consecutive times");
  }
  const auto rho_now = pmf(now).values;
  const auto rho_next = pmf(next).values;
  const auto j = probability_current(next);
  const auto current = [&](long n) {
    return (n < 0 || n >= static_cast<long>(j.size())) ? 0.0 : j[static_cast<std::size_t>(n)];
  };
  double worst = 0.0;
  for (std::size_t n = 0; n <= next.t; ++n) {
    const double before = n < rho_now.size() ? rho_now[n] : 0.0;
    const long ln = static_cast<long>(n);
    const double r = rho_next[n] - before - current(ln - 1) + current(ln);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

/// <X>_t = sum_n n rho(n, t)
inline double position_mean(const PmfSeries& rho) {
  double acc = 0.0;
  for (std::size_t n = 0; n < rho.values.size(); ++n) acc += static_cast<double>(n) * rho.values[n];
  return acc;
}

/// <X>_{t+1} - <X>_t = sum_n |psi_1(n, t+1)|^2
inline double ehrenfest_increment(const WalkerState& next) {
  double acc = 0.0;
  for (const Complex& a : next.amp1) acc += std::norm(a);
  return acc;
}

/// max_l |rho(floor(t/2) - l) - rho(ceil(t/2) + l)|
inline double reflection_residual(const PmfSeries& rho) {
  const std::size_t t = rho.t;
  const std::size_t lo = t / 2;
  const std::size_t hi = (t + 1) / 2;
  double worst = 0.0;
  for (std::size_t l = 0; l <= lo; ++l) {
    worst = std::max(worst, std::abs(rho.values[lo - l] - rho.values[hi + l]));
  }
  return worst;
}

/// |<psi| U |psi>| summed site by site.
inline double fair_coin_residual(const WalkerState& s, const CoinMatrix& coin) {
  Complex acc{};
  for (std::size_t n = 0; n < s.sites(); ++n) {
    const auto [u0, u1] = coin.apply(s.amp0[n], s.amp1[n]);
    acc += std::conj(s.amp0[n]) * u0 + std::conj(s.amp1[n]) * u1;
  }
  return std::abs(acc);
}

// ---- symmetry classification -----------------------------------------------

enum class SymmetryFamily { endpoint, odd_coin, confined, approximate, none };

inline std::string_view to_string(SymmetryFamily f) {
  switch (f) {
    case SymmetryFamily::endpoint: return "endpoint";
    case SymmetryFamily::odd_coin: return "odd-coin";
    case SymmetryFamily::confined: return "confined";
    case SymmetryFamily::approximate: return "approximate";
    case SymmetryFamily::none: return "none";
  }
  return "none";
}

/// Threshold on the trigonometric residuals (not on the angles).
inline constexpr double kSymmetryTolerance = 1e-12;

struct SymmetryVerdict {
  SymmetryFamily family = SymmetryFamily::none;
  /// cos2eta cos2theta + sin2eta sin2theta cos varphi
  double pair_condition = 0.0;
  /// cos2eta cos theta + sin2eta sin theta cos varphi; zero is also the approximate condition
  double cross_condition = 0.0;
  /// measured on the exact PMF at t_probe
  double reflection_residual = 0.0;
  std::size_t t_probe = 0;
  double tolerance = kSymmetryTolerance;
  // every family the parameters belong to; they may intersect
  bool is_endpoint = false;
  bool is_odd_coin = false;
  bool is_confined = false;
  bool is_approximate = false;
};

/**
 * Classifies (theta, varphi, eta).  The exact families are matched on their
 * defining trigonometric values; the most specific one wins (confined, then
 * endpoint, then odd-coin).  Approximate means the cross condition vanishes
 * away from theta = pi/2.  The reflection residual is always measured
 * independently on the evolved PMF.
 */
inline SymmetryVerdict classify_symmetry(const CoinParameters& p, std::size_t t_probe) {
  if (t_probe < 2) throw std::invalid_argument("symmetry probe needs t >= 2");
  const double tol = kSymmetryTolerance;
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  SymmetryVerdict v;
  v.t_probe = t_probe;
  v.pair_condition = p.cos_2eta() * (c * c - s * s) + p.sin_2eta() * (2.0 * s * c) * p.cos_varphi();
  v.cross_condition = p.cos_2eta() * c + p.sin_2eta() * s * p.cos_varphi();

  const bool balanced = std::abs(p.cos_2eta()) < tol;
  v.is_endpoint = balanced && std::abs(s) < tol;
  v.is_confined = balanced && std::abs(c) < tol;
  v.is_odd_coin = balanced && std::abs(p.cos_varphi()) < tol;
  v.is_approximate = std::abs(c) >= tol && std::abs(v.cross_condition) < tol;

  if (v.is_confined) {
    v.family = SymmetryFamily::confined;
  } else if (v.is_endpoint) {
    v.family = SymmetryFamily::endpoint;
  } else if (v.is_odd_coin) {
    v.family = SymmetryFamily::odd_coin;
  } else if (v.is_approximate) {
    v.family = SymmetryFamily::approximate;
  }
  v.reflection_residual = reflection_residual(pmf(evolve(p, t_probe)));
  return v;
}

/**
 * The unique eta in [0, pi/2] with cot(2 eta) = -tan(theta) cos(varphi).
 * Throws std::domain_error at theta = pi/2, where the condition is singular.
 */
inline double approximate_symmetry_eta(double theta, double varphi) {
  if (!(theta >= 0.0 && theta < half_pi)) {
    throw std::domain_error("approximate symmetry condition is singular at theta = pi/2");
  }
  if (!(varphi >= 0.0 && varphi <= pi)) throw std::invalid_argument("varphi outside [0, pi]");
  // cot(2 eta) = x / y with y = cos(theta) > 0 puts 2 eta in (0, pi)
  return 0.5 * std::atan2(std::cos(theta), -std::sin(theta) * std::cos(varphi));
}

}  // namespace qwalk
