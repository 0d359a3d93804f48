// Large-t behaviour: stationary-phase saddle, asymptotic wave
// functions, the oscillating PMF estimate with its envelopes, and the
// stationary density of the rescaled position.
// With nu = n/t the estimate lives on the light cone
// (1 - cos theta)/2 < nu < (1 + cos theta)/2
// and the phase phi(nu, u) = pi (2 nu - 1) u + omega_u is stationary at u0:
// cos(pi u0) = (1 - 2 nu) tan(theta) / (2 sqrt(nu (1 - nu)))
// sin(pi u0) = sqrt(cos^2 theta - (2 nu - 1)^2) / (2 cos(theta) sqrt(nu (1 - nu)))
// The envelopes are written with the common prefactor
// A(nu) = sin(theta) / (2 pi t nu (1 - nu) sqrt(cos^2 theta - (2 nu - 1)^2))
// so rho_bar = A [1 - (2nu-1) K + |R| sin(2 phi0 t + Omega)] with
// K = cos 2eta + sin 2eta tan(theta) cos(varphi).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qwalk/core.hpp"

namespace qwalk {

/// ((1 - cos theta)/2, (1 + cos theta)/2)
inline std::pair<double, double> allowed_interval(double theta) {
  if (!(theta >= 0.0 && theta <= half_pi)) throw std::invalid_argument("theta outside [0, pi/2]");
  const double c = theta == half_pi ? 0.0 : std::cos(theta);
  return {0.5 * (1.0 - c), 0.5 * (1.0 + c)};
}

struct SaddleData {
  double nu = 0.5;
  double u0 = 0.5;
  double cos_pi_u0 = 0.0;
  double sin_pi_u0 = 1.0;
  double omega0 = 0.0;
  double sin_omega0 = 0.0;
  double cos_omega0 = 1.0;
  /// phi(nu, u0)
  double phi0 = 0.0;
  /// d^2 phi / du^2 at u0, never positive
  double phi2 = 0.0;
};

namespace detail {

inline void check_interior(double theta, double nu) {
  if (theta == half_pi) {
    throw std::domain_error("allowed interval collapses to a point at theta = pi/2");
  }
  const auto [lo, hi] = allowed_interval(theta);
  if (!(nu > lo && nu < hi)) {
    throw std::domain_error("nu = " + std::to_string(nu) + " outside the open interval (" +
                            std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
}

/// sqrt(cos^2 theta - (2 nu - 1)^2), the light-cone factor
inline double cone_root(double cos_theta, double nu) {
  const double d = 2.0 * nu - 1.0;
  return std::sqrt(std::max(0.0, (cos_theta - d) * (cos_theta + d)));
}

}  // namespace detail

/// Stationary point of phi(nu, .) for nu strictly inside the allowed interval.
inline SaddleData saddle(double theta, double nu) {
  detail::check_interior(theta, nu);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double q = std::sqrt(nu * (1.0 - nu));
  const double root = detail::cone_root(c, nu);

  SaddleData d;
  d.nu = nu;
  d.cos_pi_u0 = (1.0 - 2.0 * nu) * s / (2.0 * q * c);
  d.sin_pi_u0 = root / (2.0 * q * c);
  d.u0 = std::atan2(d.sin_pi_u0, d.cos_pi_u0) / pi;
  d.sin_omega0 = root / (2.0 * q);
  d.cos_omega0 = s / (2.0 * q);
  d.omega0 = std::atan2(d.sin_omega0, d.cos_omega0);
  d.phi0 = pi * (2.0 * nu - 1.0) * d.u0 + d.omega0;
  d.phi2 = -4.0 * pi * pi * nu * (1.0 - nu) * root / s;
  return d;
}

/**
 * The two-arcsine closed form of phi(nu, u0).  It coincides with
 * saddle().phi0 for nu <= 1/2; above the midpoint it uses pi - pi u0 in place
 * of pi u0 and no longer matches the stationary value.
 */
inline double phi0_arcsine_form(double theta, double nu) {
  detail::check_interior(theta, nu);
  const double c = std::cos(theta);
  const double q2 = 4.0 * nu * (1.0 - nu);
  const double cone = (c * c - (2.0 * nu - 1.0) * (2.0 * nu - 1.0));
  return (2.0 * nu - 1.0) * std::asin(std::sqrt(cone / (q2 * c * c))) + std::asin(std::sqrt(cone / q2));
}

/// Stationary-phase estimate of (psi_0(n,t), psi_1(n,t)).
inline std::pair<Complex, Complex> asymptotic_state(const CoinParameters& p, std::size_t t, long n) {
  if (t < 1) throw std::domain_error("asymptotic state needs t >= 1");
  const double td = static_cast<double>(t);
  const double nu = static_cast<double>(n) / td;
  const SaddleData d = saddle(p.theta(), nu);
  const double s = p.sin_theta();
  const double root = detail::cone_root(p.cos_theta(), nu);
  const double base = 2.0 * s / (pi * root * td);

  const double carrier = d.phi0 * td - pi / 4.0;
  const double pu = pi * d.u0;
  const double cos_mid = std::cos(carrier);
  const double cos_up = std::cos(carrier + pu);
  const double cos_down = std::cos(carrier - pu);

  const Complex e_phi = p.phase();
  // g(u0) = 2(1-nu), 2 sqrt(nu(1-nu)), 2 nu for the three weight kinds
  const Complex psi0 = p.cos_eta() * std::sqrt(base * (1.0 - nu) / nu) * cos_mid +
                       std::conj(e_phi) * (p.sin_eta() * std::sqrt(base) * cos_up);
  const Complex psi1 = e_phi * (p.cos_eta() * std::sqrt(base) * cos_down) +
                       p.sin_eta() * std::sqrt(base * nu / (1.0 - nu)) * cos_mid;
  return {psi0, psi1};
}

/// The pieces of the envelope formulas at one nu.
struct EnvelopeTerms {
  double prefactor = 0.0;  // A(nu)
  double drift = 0.0;      // (2nu - 1) K
  double r_signed = 0.0;   // R(nu), carries the sign of 2nu - 1
  double omega = 0.0;      // Omega(nu)
  double phase2 = 0.0;     // 2 phi0 t
};

/**
 * Omega is fixed by matching |R| sin(x + Omega) to the expanded pair
 * (2nu-1) [a sin x + b cos x]; the atan2 arguments therefore carry the sign
 * of 2nu - 1.
 */
inline EnvelopeTerms envelope_terms(const CoinParameters& p, std::size_t t, double nu) {
  const SaddleData d = saddle(p.theta(), nu);
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  const double tan_t = s / c;
  const double dev = 2.0 * nu - 1.0;
  const double root = detail::cone_root(c, nu);
  const double k = p.cos_2eta() + p.sin_2eta() * tan_t * p.cos_varphi();
  const double a = dev / (c * c) - k;
  const double b = p.cos_2eta() * tan_t - p.sin_2eta() * p.cos_varphi();
  const double spread = std::sqrt(std::abs(1.0 - dev * dev / (c * c)));

  EnvelopeTerms e;
  e.prefactor = s / (2.0 * pi * static_cast<double>(t) * nu * (1.0 - nu) * root);
  e.drift = dev * k;
  e.r_signed = dev * std::sqrt(a * a + std::abs(1.0 - dev * dev / (c * c)) * b * b);
  e.omega = std::atan2(dev * spread * b, dev * a);
  e.phase2 = 2.0 * d.phi0 * static_cast<double>(t);
  return e;
}

/// Oscillating asymptotic PMF estimate at (n, t).
inline double rho_bar(const CoinParameters& p, std::size_t t, long n) {
  if (t < 1) throw std::domain_error("asymptotic PMF needs t >= 1");
  const double nu = static_cast<double>(n) / static_cast<double>(t);
  const EnvelopeTerms e = envelope_terms(p, t, nu);
  return e.prefactor * (1.0 - e.drift + std::abs(e.r_signed) * std::sin(e.phase2 + e.omega));
}

/// Same estimate from the expanded sin/cos form, before folding into |R| and Omega.
inline double rho_bar_expanded(const CoinParameters& p, std::size_t t, long n) {
  const double td = static_cast<double>(t);
  const double nu = static_cast<double>(n) / td;
  const SaddleData d = saddle(p.theta(), nu);
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  const double tan_t = s / c;
  const double dev = 2.0 * nu - 1.0;
  const double root = detail::cone_root(c, nu);
  const double k = p.cos_2eta() + p.sin_2eta() * tan_t * p.cos_varphi();
  const double x = 2.0 * d.phi0 * td;
  const double pre = s / (2.0 * pi * td * nu * (1.0 - nu) * root);
  return pre * (1.0 - dev * k + dev * (dev / (c * c) - k) * std::sin(x) +
                dev * std::sqrt(1.0 - dev * dev / (c * c)) *
                    (p.cos_2eta() * tan_t - p.sin_2eta() * p.cos_varphi()) * std::cos(x));
}

/// Envelope functions on a grid of integer sites at fixed t.
struct AsymptoticProfile {
  std::size_t t = 0;
  std::vector<long> ns;
  std::vector<double> nus;
  std::vector<double> rho_bar;
  std::vector<double> rho_sup;
  std::vector<double> rho_inf;
  std::vector<double> rho_med;
  std::vector<double> r_mag;  // |R(nu)|
  std::vector<double> omega;  // Omega(nu)
  /// set at theta = pi/2, where the interval has no interior; all sequences stay empty
  bool degenerate = false;
};

/// Guard band width used at the interval edges: max(2/t, 1e-3).
inline double default_guard(std::size_t t) {
  return std::max(2.0 / static_cast<double>(std::max<std::size_t>(t, 1)), 1e-3);
}

/// Integer sites whose nu lies at least `guard` inside both interval edges.
inline std::vector<long> guarded_grid(double theta, std::size_t t, double guard) {
  std::vector<long> ns;
  if (theta == half_pi || t == 0) return ns;
  const auto [lo, hi] = allowed_interval(theta);
  const double td = static_cast<double>(t);
  for (std::size_t n = 0; n <= t; ++n) {
    const double nu = static_cast<double>(n) / td;
    if (nu >= lo + guard && nu <= hi - guard && nu > lo && nu < hi) ns.push_back(static_cast<long>(n));
  }
  return ns;
}

/**
 * Fills every envelope on `grid`.  rho_med is evaluated from its own closed
 * form and checked against (sup + inf)/2; a mismatch throws std::logic_error.
 */
inline AsymptoticProfile rho_bounds(const CoinParameters& p, std::size_t t, const std::vector<long>& grid) {
  AsymptoticProfile prof;
  prof.t = t;
  if (p.theta() == half_pi) {
    prof.degenerate = true;
    return prof;
  }
  if (t < 1) throw std::domain_error("asymptotic profile needs t >= 1");
  const double td = static_cast<double>(t);
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  const double k = p.cos_2eta() + p.sin_2eta() * (s / c) * p.cos_varphi();
  for (long n : grid) {
    const double nu = static_cast<double>(n) / td;
    const EnvelopeTerms e = envelope_terms(p, t, nu);
    const double r = std::abs(e.r_signed);
    const double sup = e.prefactor * (1.0 + r - e.drift);
    const double inf = e.prefactor * (1.0 - r - e.drift);
    const double root = detail::cone_root(c, nu);
    const double med = s * (1.0 - (2.0 * nu - 1.0) * k) / (2.0 * pi * td * nu * (1.0 - nu) * root);
    const double mid = 0.5 * (sup + inf);
    if (std::abs(med - mid) > 1e-14 * std::max(1.0, std::abs(med))) {
      throw std::logic_error("median envelope disagrees with the envelope average at n=" +
                             std::to_string(n));
    }
    prof.ns.push_back(n);
    prof.nus.push_back(nu);
    prof.rho_bar.push_back(e.prefactor * (1.0 - e.drift + r * std::sin(e.phase2 + e.omega)));
    prof.rho_sup.push_back(sup);
    prof.rho_inf.push_back(inf);
    prof.rho_med.push_back(med);
    prof.r_mag.push_back(r);
    prof.omega.push_back(e.omega);
  }
  return prof;
}

/**
 * Weak-limit density of eps = (2nu - 1)/cos(theta) on (-1, 1):
 *
 *   rho(eps) = sin(theta) / (pi (1 - eps^2 cos^2 theta) sqrt(1 - eps^2))
 *              * [1 - eps (cos2eta cos theta + sin2eta sin theta cos varphi)]
 *
 * At theta = 0 the density degenerates into point masses cos^2(eta) at
 * eps = -1 and sin^2(eta) at eps = +1; `degenerate` is set and operator()
 * returns 0.
 */
class StationaryDensity {
 public:
  /// Relative tolerance and refinement cap for the u-integral.
  static constexpr double kQuadratureTolerance = 1e-12;
  static constexpr unsigned kQuadratureDepth = 15;

  explicit StationaryDensity(const CoinParameters& p)
      : theta_(p.theta()), varphi_(p.varphi()), eta_(p.eta()),
        sin_theta_(p.sin_theta()), cos_theta_(p.cos_theta()),
        tilt_(p.cos_2eta() * p.cos_theta() + p.sin_2eta() * p.sin_theta() * p.cos_varphi()),
        degenerate_(p.theta() == 0.0),
        mass_left_(p.cos_eta() * p.cos_eta()), mass_right_(p.sin_eta() * p.sin_eta()) {}

  double theta() const noexcept { return theta_; }
  double varphi() const noexcept { return varphi_; }
  double eta() const noexcept { return eta_; }
  bool degenerate() const noexcept { return degenerate_; }
  double endpoint_mass_left() const noexcept { return degenerate_ ? mass_left_ : 0.0; }
  double endpoint_mass_right() const noexcept { return degenerate_ ? mass_right_ : 0.0; }
  /// cos2eta cos theta + sin2eta sin theta cos varphi
  double tilt() const noexcept { return tilt_; }

  double operator()(double eps) const {
    if (degenerate_ || !(eps > -1.0 && eps < 1.0)) return 0.0;
    const double c2 = cos_theta_ * cos_theta_;
    return sin_theta_ / (pi * (1.0 - eps * eps * c2) * std::sqrt(1.0 - eps * eps)) * (1.0 - eps * tilt_);
  }

  /// Integral of the density from -1 to eps (endpoint masses included when degenerate).
  double cdf(double eps) const {
    if (eps <= -1.0) return 0.0;
    if (eps >= 1.0) return 1.0;
    if (degenerate_) return mass_left_;
    return integrate_u(-half_pi, std::asin(eps));
  }

  /// Integral over (-1, 1); should be 1.
  double total_mass() const {
    if (degenerate_) return mass_left_ + mass_right_;
    return integrate_u(-half_pi, 0.0) + integrate_u(0.0, half_pi);
  }

 private:
  /// eps = sin(u) removes the inverse square-root edge singularity.
  double integrate_u(double a, double b) const {
    const double c2 = cos_theta_ * cos_theta_;
    auto f = [&](double u) {
      const double su = std::sin(u);
      return sin_theta_ / pi * (1.0 - su * tilt_) / (1.0 - c2 * su * su);
    };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kQuadratureDepth, kQuadratureTolerance, &err);
  }

  double theta_, varphi_, eta_;
  double sin_theta_, cos_theta_;
  double tilt_;
  bool degenerate_;
  double mass_left_, mass_right_;
};

inline StationaryDensity stationary_density(const CoinParameters& p) { return StationaryDensity(p); }

/// eps = (2 n / t - 1) / cos(theta)
inline double rescaled_position(double theta, double nu) {
  const double c = theta == half_pi ? 0.0 : std::cos(theta);
  return (2.0 * nu - 1.0) / c;
}

}  // namespace qwalk
