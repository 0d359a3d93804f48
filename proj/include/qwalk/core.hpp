// Walk instance: coin parameters, coin matrix, walker state and the
// unidirectional <-> bidirectional site mapping.
// The walker either stays put (chirality |0>) or steps one site to the right
// (chirality |1>).  After t steps the support is exactly {0, ..., t}.  The
// conventional left/right walk is recovered through m = 2n - t.
// Gauge: the coin phases alpha and the initial relative phase gamma are fixed
// to zero, which leaves
// U = [[ cos(theta),            e^{-i varphi} sin(theta) ],
//      [ e^{i varphi} sin(theta),          -cos(theta)   ]]
// |psi>_0 = (cos(eta) |0> + sin(eta) |1>) (x) |0>
// with theta in [0, pi/2], varphi in [0, pi] and eta in [0, pi/2].
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2.0;

/// Which computation route produced a result.
enum class Method { oracle, closed, spectral, lambda, asymptotic };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::closed: return "closed";
    case Method::spectral: return "spectral";
    case Method::lambda: return "lambda";
    case Method::asymptotic: return "asymptotic";
  }
  return "unknown";
}

/**
 * The triple (theta, varphi, eta) defining one walk instance.
 *
 * Angles outside the reduced ranges are rejected, never wrapped.  Sines and
 * cosines are computed once here since every inner loop needs them.
 */
class CoinParameters {
 public:
  CoinParameters(double theta, double varphi, double eta)
      : theta_(theta), varphi_(varphi), eta_(eta) {
    check_range("theta", theta, 0.0, half_pi);
    check_range("varphi", varphi, 0.0, pi);
    check_range("eta", eta, 0.0, half_pi);
    // exact zeros at the endpoints keep the degenerate families exact
    cos_theta_ = theta == half_pi ? 0.0 : std::cos(theta);
    sin_theta_ = std::sin(theta);
    cos_varphi_ = varphi == half_pi ? 0.0 : std::cos(varphi);
    sin_varphi_ = varphi == pi ? 0.0 : std::sin(varphi);
    cos_eta_ = eta == half_pi ? 0.0 : std::cos(eta);
    sin_eta_ = std::sin(eta);
    cos_2eta_ = eta == pi / 4.0 ? 0.0 : std::cos(2.0 * eta);
    sin_2eta_ = eta == half_pi ? 0.0 : std::sin(2.0 * eta);
  }

  double theta() const noexcept { return theta_; }
  double varphi() const noexcept { return varphi_; }
  double eta() const noexcept { return eta_; }

  double cos_theta() const noexcept { return cos_theta_; }
  double sin_theta() const noexcept { return sin_theta_; }
  double cos_varphi() const noexcept { return cos_varphi_; }
  double sin_varphi() const noexcept { return sin_varphi_; }
  double cos_eta() const noexcept { return cos_eta_; }
  double sin_eta() const noexcept { return sin_eta_; }
  double cos_2eta() const noexcept { return cos_2eta_; }
  double sin_2eta() const noexcept { return sin_2eta_; }

  /// e^{i varphi}
  Complex phase() const noexcept { return {cos_varphi_, sin_varphi_}; }

 private:
  static void check_range(const char* name, double value, double lo, double hi) {
    if (!(value >= lo && value <= hi)) {
      throw std::invalid_argument(std::string(name) + " = " + std::to_string(value) +
                                  " outside [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
    }
  }

  double theta_, varphi_, eta_;
  double cos_theta_, sin_theta_;
  double cos_varphi_, sin_varphi_;
  double cos_eta_, sin_eta_;
  double cos_2eta_, sin_2eta_;
};

/// The reduced 2x2 coin.  Row index is the outgoing chirality.
struct CoinMatrix {
  Complex u00, u01, u10, u11;

  /// (a0, a1) -> U (a0, a1)
  std::pair<Complex, Complex> apply(Complex a0, Complex a1) const noexcept {
    return {u00 * a0 + u01 * a1, u10 * a0 + u11 * a1};
  }
};

inline CoinMatrix make_coin(const CoinParameters& p) {
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  const Complex e = p.phase();
  return {Complex(c, 0.0), std::conj(e) * s, e * s, Complex(-c, 0.0)};
}

/**
 * Both chirality components over sites 0..t at a fixed time t.
 * Dense storage; amp0[n] = psi_0(n, t), amp1[n] = psi_1(n, t).
 */
struct WalkerState {
  std::size_t t = 0;
  std::vector<Complex> amp0;
  std::vector<Complex> amp1;

  static WalkerState zero(std::size_t t) {
    return {t, std::vector<Complex>(t + 1), std::vector<Complex>(t + 1)};
  }

  std::size_t sites() const noexcept { return amp0.size(); }

  /// Throws std::logic_error if the support is not {0..t} or an entry is not finite.
  void check_shape() const {
    if (amp0.size() != t + 1 || amp1.size() != t + 1) {
      throw std::logic_error("walker state at t=" + std::to_string(t) +
                             " must hold t+1 sites per component");
    }
    for (std::size_t n = 0; n <= t; ++n) {
      if (!std::isfinite(amp0[n].real()) || !std::isfinite(amp0[n].imag()) ||
          !std::isfinite(amp1[n].real()) || !std::isfinite(amp1[n].imag())) {
        throw std::logic_error("non-finite amplitude at site " + std::to_string(n));
      }
    }
  }
};

inline double norm_squared(const WalkerState& s) {
  double acc = 0.0;
  for (std::size_t n = 0; n < s.sites(); ++n) acc += std::norm(s.amp0[n]) + std::norm(s.amp1[n]);
  return acc;
}

/// Largest componentwise |a - b| over both chiralities.  States must share t.
inline double max_component_difference(const WalkerState& a, const WalkerState& b) {
  if (a.t != b.t || a.sites() != b.sites()) {
    throw std::invalid_argument("states at different times cannot be compared");
  }
  double worst = 0.0;
  for (std::size_t n = 0; n < a.sites(); ++n) {
    worst = std::max(worst, std::abs(a.amp0[n] - b.amp0[n]));
    worst = std::max(worst, std::abs(a.amp1[n] - b.amp1[n]));
  }
  return worst;
}

inline WalkerState make_initial_state(const CoinParameters& p) {
  WalkerState s = WalkerState::zero(0);
  s.amp0[0] = p.cos_eta();
  s.amp1[0] = p.sin_eta();
  return s;
}

/// Probability mass over sites 0..t with the route that produced it.
struct PmfSeries {
  std::size_t t = 0;
  std::vector<double> values;
  Method method = Method::oracle;

  double total() const noexcept {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
};

// ---- bidirectional picture -------------------------------------------------

inline long bidirectional_site(std::size_t n, std::size_t t) noexcept {
  return 2 * static_cast<long>(n) - static_cast<long>(t);
}

/// Inverse of bidirectional_site; throws if m has the wrong parity or lies outside [-t, t].
inline std::size_t unidirectional_site(long m, std::size_t t) {
  const long tt = static_cast<long>(t);
  if (m < -tt || m > tt || ((m + tt) % 2) != 0) {
    throw std::out_of_range("site " + std::to_string(m) + " is not reachable at t=" +
                            std::to_string(t));
  }
  return static_cast<std::size_t>((m + tt) / 2);
}

using BidirectionalState = std::map<long, std::pair<Complex, Complex>>;

inline BidirectionalState to_bidirectional(const WalkerState& s) {
  BidirectionalState out;
  for (std::size_t n = 0; n < s.sites(); ++n) {
    out.emplace(bidirectional_site(n, s.t), std::make_pair(s.amp0[n], s.amp1[n]));
  }
  return out;
}

}  // namespace qwalk
