// Exact wave function from the Fourier-domain solution.
// Two evaluations of the same solution live here:
// - closed_form_state: the real trigonometric sums over r = 1..N-1 with the
//   parity terms (1 +- (-1)^t)/2 carried separately;
// - spectral_evolve + inverse_transform: the Fourier amplitudes built from
//   the eigenphases lambda_+- and inverted by DFT (radix-2 for N = 2^m).
// Frequency bins use x = r/N and the angle
// omega_x = arcsin(cos(theta) sin(pi x)),   omega_x in [0, pi/2].
// The only place cos(omega_x) vanishes is theta = 0 with 2r = N.  There the
// combined weights are replaced by their limits (see bin_weights()).
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/fft.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

inline constexpr double two_pi = 2.0 * pi;

/// Residual allowed on the padding sites n > t after inversion.
inline constexpr double kPaddingTolerance = 1e-10;

/// Principal-branch arcsin(cos(theta) sin(pi x)); x stands for r/N.
inline double omega_of(double theta, double x) {
  const double c = theta == half_pi ? 0.0 : std::cos(theta);
  return std::asin(c * std::sin(pi * x));
}

/// phi(nu, x) = pi (2 nu - 1) x + omega_x
inline double phase_phi(double nu, double x, double theta) {
  return pi * (2.0 * nu - 1.0) * x + omega_of(theta, x);
}

/// N = t + 1
inline constexpr std::size_t minimal_transform_size(std::size_t t) noexcept { return t + 1; }
/// Smallest power of two above t.
inline constexpr std::size_t pow2_transform_size(std::size_t t) noexcept {
  return fft::power_of_two_above(t);
}

/// Per-frequency constants shared by every route.
struct FrequencyBin {
  double sin_pix = 0.0;   // sin(pi r/N)
  double cos_pix = 0.0;   // cos(pi r/N), exactly 0 when 2r = N
  double omega = 0.0;
  double cos_omega = 1.0;
  /// sin(theta) / cos(omega); limit 1 when both vanish
  double weight_s = 0.0;
  /// cos(theta) cos(pi x) / cos(omega); limit 0 when both vanish
  double weight_c = 0.0;
  bool singular = false;  // cos(omega) == 0
};

/**
 * The singular bin (theta = 0, x = 1/2) approaches cos(omega) = sin(theta)
 * along theta -> 0, which fixes the limits of both fused weights.
 */
inline FrequencyBin bin_weights(const CoinParameters& p, std::size_t r, std::size_t big_n) {
  FrequencyBin b;
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  if (2 * r == big_n) {
    b.sin_pix = 1.0;
    b.cos_pix = 0.0;
  } else {
    const double angle = pi * static_cast<double>(r) / static_cast<double>(big_n);
    b.sin_pix = std::sin(angle);
    b.cos_pix = std::cos(angle);
  }
  // cos^2(omega) = 1 - c^2 sin^2 = s^2 + c^2 cos^2, no cancellation
  b.cos_omega = std::sqrt(s * s + c * c * b.cos_pix * b.cos_pix);
  b.omega = std::atan2(c * b.sin_pix, b.cos_omega);
  if (b.cos_omega == 0.0) {
    b.singular = true;
    b.weight_s = 1.0;
    b.weight_c = 0.0;
  } else {
    b.weight_s = s / b.cos_omega;
    b.weight_c = c * b.cos_pix / b.cos_omega;
  }
  return b;
}

inline std::vector<FrequencyBin> frequency_bins(const CoinParameters& p, std::size_t big_n) {
  std::vector<FrequencyBin> bins(big_n);
  for (std::size_t r = 0; r < big_n; ++r) bins[r] = bin_weights(p, r, big_n);
  return bins;
}

namespace detail {

inline void check_transform_size(std::size_t t, std::size_t big_n) {
  if (big_n < t + 1) {
    throw std::invalid_argument("transform size N=" + std::to_string(big_n) +
                                " must exceed t=" + std::to_string(t));
  }
}

/// pi * k / N reduced to [0, 2 pi) for an integer multiple k.
inline double pi_fraction(long long k, std::size_t big_n) {
  const long long two_n = 2 * static_cast<long long>(big_n);
  long long m = k % two_n;
  if (m < 0) m += two_n;
  return pi * static_cast<double>(m) / static_cast<double>(big_n);
}

inline double wrap_two_pi(double a) {
  double w = std::fmod(a, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

}  // namespace detail

/**
 * Exact wave function at time t from the closed trigonometric sums.  Any
 * N >= t + 1 gives the same state.
 */
inline WalkerState closed_form_state(const CoinParameters& p, std::size_t t, std::size_t big_n) {
  detail::check_transform_size(t, big_n);
  const auto bins = frequency_bins(p, big_n);
  std::vector<double> omega_t(big_n);
  for (std::size_t r = 0; r < big_n; ++r) {
    omega_t[r] = detail::wrap_two_pi(bins[r].omega * static_cast<double>(t));
  }

  const double even = t % 2 == 0 ? 1.0 : 0.0;
  const double odd = 1.0 - even;
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  const double inv_n = 1.0 / static_cast<double>(big_n);
  const Complex e_phi = p.phase();

  WalkerState out = WalkerState::zero(t);
  parallel::for_each_index(0, t + 1, [&](std::size_t n) {
    const long long shift = 2 * static_cast<long long>(n) - static_cast<long long>(t);
    double sum_a = 0.0;  // [1 + wc] cos(Phi)
    double sum_b = 0.0;  // ws cos(Phi + pi x)
    double sum_c = 0.0;  // ws cos(Phi - pi x)
    double sum_d = 0.0;  // [1 - wc] cos(Phi)
    for (std::size_t r = 1; r < big_n; ++r) {
      const FrequencyBin& b = bins[r];
      const double phase = detail::pi_fraction(shift * static_cast<long long>(r), big_n) + omega_t[r];
      const double cp = std::cos(phase);
      const double sp = std::sin(phase);
      const double cos_plus = cp * b.cos_pix - sp * b.sin_pix;
      const double cos_minus = cp * b.cos_pix + sp * b.sin_pix;
      sum_a += (1.0 + b.weight_c) * cp;
      sum_b += b.weight_s * cos_plus;
      sum_c += b.weight_s * cos_minus;
      sum_d += (1.0 - b.weight_c) * cp;
    }
    const double brace0_cos = even + odd * c + sum_a;
    const double brace0_sin = odd * s + sum_b;
    const double brace1_cos = odd * s + sum_c;
    const double brace1_sin = even - odd * c + sum_d;
    out.amp0[n] = inv_n * (p.cos_eta() * brace0_cos + std::conj(e_phi) * (p.sin_eta() * brace0_sin));
    out.amp1[n] = inv_n * (e_phi * (p.cos_eta() * brace1_cos) + p.sin_eta() * brace1_sin);
  }, 8);
  return out;
}

/// Fourier amplitudes of both components over r = 0..N-1 at time t.
struct SpectralSlice {
  std::size_t t = 0;
  std::size_t big_n = 1;
  std::vector<Complex> tilde0;
  std::vector<Complex> tilde1;
  /// bins where cos(omega) = 0 and the limit value was substituted
  std::size_t degenerate_bins = 0;
};

/// lambda_+ = e^{-i(omega - pi x)}
inline Complex lambda_plus(const FrequencyBin& b) {
  const Complex e_pix(b.cos_pix, b.sin_pix);
  return std::polar(1.0, -b.omega) * e_pix;
}

/// lambda_- = -e^{i(omega + pi x)}
inline Complex lambda_minus(const FrequencyBin& b) {
  const Complex e_pix(b.cos_pix, b.sin_pix);
  return -std::polar(1.0, b.omega) * e_pix;
}

/**
 * Fourier amplitudes from the eigen-decomposition of the one-step transfer
 * matrix.  The psi~_1 expression is rearranged with
 *   (lambda_+ - cos theta)(cos theta - lambda_-) = sin^2(theta) e^{2 i pi x}
 * so it stays finite at theta = 0; the only remaining pole is cos(omega) = 0,
 * where the transfer matrix is diagonal and the amplitudes are
 * (cos eta, sin eta) for every t.
 */
inline SpectralSlice spectral_evolve(const CoinParameters& p, std::size_t t, std::size_t big_n) {
  detail::check_transform_size(t, big_n);
  SpectralSlice out{t, big_n, std::vector<Complex>(big_n), std::vector<Complex>(big_n), 0};
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  const double ce = p.cos_eta();
  const double se = p.sin_eta();
  const Complex e_phi = p.phase();
  const double td = static_cast<double>(t);
  const double parity = t % 2 == 0 ? 1.0 : -1.0;

  for (std::size_t r = 0; r < big_n; ++r) {
    const FrequencyBin b = bin_weights(p, r, big_n);
    if (b.singular) {
      out.tilde0[r] = ce;
      out.tilde1[r] = se;
      ++out.degenerate_bins;
      continue;
    }
    const Complex lp = lambda_plus(b);
    const Complex lm = lambda_minus(b);
    // powers from reduced angles: t (pi r / N) is an exact multiple of pi / N
    const double pix_t = detail::pi_fraction(static_cast<long long>(t) * static_cast<long long>(r), big_n);
    const double omega_t = detail::wrap_two_pi(b.omega * td);
    const Complex lp_t = std::polar(1.0, pix_t - omega_t);
    const Complex lm_t = parity * std::polar(1.0, pix_t + omega_t);

    const Complex e_mpix(b.cos_pix, -b.sin_pix);
    const Complex e_pix(b.cos_pix, b.sin_pix);
    const Complex scale = 1.0 / (2.0 * b.cos_omega);
    const Complex mix = std::conj(e_phi) * (s * se);

    out.tilde0[r] = e_mpix * scale * (lp_t * ((c - lm) * ce + mix) - lm_t * ((c - lp) * ce + mix));
    out.tilde1[r] = e_pix * scale *
                    ((lp_t - lm_t) * e_phi * (s * ce) +
                     se * e_mpix * e_mpix * (lp_t * (lp - c) + lm_t * (c - lm)));
  }
  return out;
}

enum class TransformAlgorithm { automatic, direct, radix2 };

/**
 * Inverse DFT of a slice back to sites 0..t.  `automatic` picks radix-2 for
 * power-of-two N and the direct O(N^2) sum otherwise.  Sites t+1..N-1 must
 * come back empty; std::runtime_error otherwise.
 */
inline WalkerState inverse_transform(const SpectralSlice& slice,
                                     TransformAlgorithm algo = TransformAlgorithm::automatic) {
  const std::size_t big_n = slice.big_n;
  detail::check_transform_size(slice.t, big_n);
  if (slice.tilde0.size() != big_n || slice.tilde1.size() != big_n) {
    throw std::invalid_argument("spectral slice length does not match N");
  }
  if (algo == TransformAlgorithm::automatic) {
    algo = fft::is_power_of_two(big_n) ? TransformAlgorithm::radix2 : TransformAlgorithm::direct;
  }

  std::vector<Complex> psi0, psi1;
  if (algo == TransformAlgorithm::radix2) {
    psi0 = slice.tilde0;
    psi1 = slice.tilde1;
    fft::radix2_inplace<double>(psi0, fft::Direction::inverse);
    fft::radix2_inplace<double>(psi1, fft::Direction::inverse);
  } else {
    psi0 = fft::direct<double>(slice.tilde0, fft::Direction::inverse);
    psi1 = fft::direct<double>(slice.tilde1, fft::Direction::inverse);
  }

  for (std::size_t n = slice.t + 1; n < big_n; ++n) {
    const double leak = std::max(std::abs(psi0[n]), std::abs(psi1[n]));
    if (leak > kPaddingTolerance) {
      throw std::runtime_error("inverse transform leaves amplitude " + std::to_string(leak) +
                               " at padding site " + std::to_string(n));
    }
  }
  psi0.resize(slice.t + 1);
  psi1.resize(slice.t + 1);
  return {slice.t, std::move(psi0), std::move(psi1)};
}

/// Forward DFT of a state zero-padded to N sites.
inline SpectralSlice forward_transform(const WalkerState& s, std::size_t big_n) {
  detail::check_transform_size(s.t, big_n);
  std::vector<Complex> f0(big_n), f1(big_n);
  std::copy(s.amp0.begin(), s.amp0.end(), f0.begin());
  std::copy(s.amp1.begin(), s.amp1.end(), f1.begin());
  if (fft::is_power_of_two(big_n)) {
    fft::radix2_inplace<double>(f0, fft::Direction::forward);
    fft::radix2_inplace<double>(f1, fft::Direction::forward);
  } else {
    f0 = fft::direct<double>(f0, fft::Direction::forward);
    f1 = fft::direct<double>(f1, fft::Direction::forward);
  }
  return {s.t, big_n, std::move(f0), std::move(f1), 0};
}

/// spectral_evolve followed by inverse_transform.
inline WalkerState spectral_state(const CoinParameters& p, std::size_t t, std::size_t big_n,
                                  TransformAlgorithm algo = TransformAlgorithm::automatic) {
  return inverse_transform(spectral_evolve(p, t, big_n), algo);
}

}  // namespace qwalk
