// The real kernel Lambda(n, t) and the decomposition of both wave
// function components over it.
// Lambda obeys a single two-step recursion
// Lambda(n, t+2) = cos(theta) [Lambda(n, t+1) - Lambda(n-1, t+1)] + Lambda(n-1, t)
// with Lambda(0,0) = 1, Lambda(0,1) = Lambda(1,1) = 0 and zero outside 0..t.
// It depends on theta only; eta and varphi enter through the t = 0 and t = 1
// amplitudes:
// psi_0(n,t) = psi_0(0,0) Lambda(n,t) + psi_0(0,1) Lambda(n+1,t+1)
// psi_1(n,t) = psi_1(0,0) Lambda(n,t) + psi_1(1,1) Lambda(n,t+1)
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

/// Rows t = 0..t_max, row t holding Lambda(0..t, t).  Reads outside the support give 0.
class LambdaTable {
 public:
  explicit LambdaTable(std::size_t t_max) : t_max_(t_max), rows_(t_max + 1) {
    for (std::size_t t = 0; t <= t_max; ++t) rows_[t].assign(t + 1, 0.0);
  }

  std::size_t t_max() const noexcept { return t_max_; }

  double operator()(long n, long t) const {
    if (t < 0 || static_cast<std::size_t>(t) > t_max_) {
      throw std::out_of_range("Lambda row " + std::to_string(t) + " not in table (t_max=" +
                              std::to_string(t_max_) + ")");
    }
    if (n < 0 || n > t) return 0.0;
    return rows_[static_cast<std::size_t>(t)][static_cast<std::size_t>(n)];
  }

  double& at(std::size_t n, std::size_t t) { return rows_.at(t).at(n); }

  const std::vector<double>& row(std::size_t t) const { return rows_.at(t); }

 private:
  std::size_t t_max_;
  std::vector<std::vector<double>> rows_;
};

/**
 * Lambda(n, t) from its closed cosine sum
 *
 *   (1/N) { (1 + (-1)^t)/2 + sum_{r=1}^{N-1} cos(phi t - omega) / cos(omega) }.
 *
 * At the singular bin (theta = 0, 2r = N) the summand tends to (-1)^{n+1} (t - 1).
 */
inline double lambda_value(double theta, long n, long t, std::size_t big_n) {
  if (t < 0 || n < 0 || n > t) {
    throw std::invalid_argument("lambda_value needs 0 <= n <= t");
  }
  const std::size_t tt = static_cast<std::size_t>(t);
  detail::check_transform_size(tt, big_n);
  // eta and varphi are irrelevant to Lambda
  const CoinParameters p(theta, 0.0, 0.0);
  const long long shift = 2LL * n - t;
  double sum = t % 2 == 0 ? 1.0 : 0.0;
  for (std::size_t r = 1; r < big_n; ++r) {
    const FrequencyBin b = bin_weights(p, r, big_n);
    if (b.singular) {
      sum += ((n % 2 == 0) ? -1.0 : 1.0) * static_cast<double>(t - 1);
      continue;
    }
    const double phase = detail::pi_fraction(shift * static_cast<long long>(r), big_n) +
                         detail::wrap_two_pi(b.omega * static_cast<double>(t)) - b.omega;
    sum += std::cos(phase) / b.cos_omega;
  }
  return sum / static_cast<double>(big_n);
}

/// Table filled row by row through the two-step recursion.
inline LambdaTable lambda_table_recursive(double theta, std::size_t t_max) {
  const double c = theta == half_pi ? 0.0 : std::cos(theta);
  LambdaTable table(t_max);
  table.at(0, 0) = 1.0;
  // row 1 stays zero
  for (std::size_t t = 2; t <= t_max; ++t) {
    const long tp = static_cast<long>(t);
    for (long n = 0; n <= tp; ++n) {
      table.at(static_cast<std::size_t>(n), t) =
          c * (table(n, tp - 1) - table(n - 1, tp - 1)) + table(n - 1, tp - 2);
    }
  }
  return table;
}

/// Same table from lambda_value with N = t + 1 per row.
inline LambdaTable lambda_table_closed(double theta, std::size_t t_max) {
  LambdaTable table(t_max);
  for (std::size_t t = 0; t <= t_max; ++t) {
    for (std::size_t n = 0; n <= t; ++n) {
      table.at(n, t) = lambda_value(theta, static_cast<long>(n), static_cast<long>(t), t + 1);
    }
  }
  return table;
}

/// psi_0(0,1) and psi_1(1,1), the only nonzero amplitudes after one step.
inline std::pair<Complex, Complex> first_step_amplitudes(const CoinParameters& p) {
  const Complex e_phi = p.phase();
  const Complex stay = p.cos_eta() * p.cos_theta() + std::conj(e_phi) * (p.sin_eta() * p.sin_theta());
  const Complex move = e_phi * (p.cos_eta() * p.sin_theta()) - p.sin_eta() * p.cos_theta();
  return {stay, move};
}

namespace detail {
inline void check_table_covers(const LambdaTable& table, std::size_t t) {
  if (table.t_max() < t + 1) {
    throw std::invalid_argument("Lambda table must cover row t+1=" + std::to_string(t + 1));
  }
}
}  // namespace detail

inline WalkerState state_via_lambda(const CoinParameters& p, std::size_t t, const LambdaTable& table) {
  detail::check_table_covers(table, t);
  const auto [stay, move] = first_step_amplitudes(p);
  const long tp = static_cast<long>(t);
  WalkerState out = WalkerState::zero(t);
  for (long n = 0; n <= tp; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out.amp0[i] = p.cos_eta() * table(n, tp) + stay * table(n + 1, tp + 1);
    out.amp1[i] = p.sin_eta() * table(n, tp) + move * table(n, tp + 1);
  }
  return out;
}

/// Lambda_+(n,t) = [Lambda(n+1,t+1) + Lambda(n,t+1)] / 2
inline double lambda_plus_value(const LambdaTable& table, long n, long t) {
  return 0.5 * (table(n + 1, t + 1) + table(n, t + 1));
}

/// Lambda_-(n,t) = [Lambda(n+1,t+1) - Lambda(n,t+1)] / 2
inline double lambda_minus_value(const LambdaTable& table, long n, long t) {
  return 0.5 * (table(n + 1, t + 1) - table(n, t + 1));
}

/**
 * PMF assembled from Lambda and Lambda_+-:
 *
 *   rho = L^2 + L+^2 + L-^2 + 2 cos(theta) L L-
 *       + 2 [cos2eta cos2theta + sin2eta sin2theta cos varphi] L+ L-
 *       + 2 [cos2eta cos theta + sin2eta sin theta cos varphi] L L+
 */
inline PmfSeries pmf_via_lambda(const CoinParameters& p, std::size_t t, const LambdaTable& table) {
  detail::check_table_covers(table, t);
  const double c = p.cos_theta();
  const double s = p.sin_theta();
  const double k_pm = p.cos_2eta() * (c * c - s * s) + p.sin_2eta() * (2.0 * s * c) * p.cos_varphi();
  const double k_lp = p.cos_2eta() * c + p.sin_2eta() * s * p.cos_varphi();
  const long tp = static_cast<long>(t);
  PmfSeries out{t, std::vector<double>(t + 1), Method::lambda};
  for (long n = 0; n <= tp; ++n) {
    const double l = table(n, tp);
    const double lp = lambda_plus_value(table, n, tp);
    const double lm = lambda_minus_value(table, n, tp);
    out.values[static_cast<std::size_t>(n)] = l * l + lp * lp + lm * lm + 2.0 * c * l * lm +
                                              2.0 * k_pm * lp * lm + 2.0 * k_lp * l * lp;
  }
  return out;
}

}  // namespace qwalk
