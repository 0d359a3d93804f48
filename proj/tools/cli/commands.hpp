// Subcommands.  Builders return a Document or report; cmd_* wrappers
// validate, write and map failures to exit codes.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/output.hpp"
#include "cli/run_config.hpp"
#include "qwalk/qwalk.hpp"

namespace qwalk::cli {

inline constexpr std::string_view kToolName = "qwalk";
inline constexpr double kCompareThreshold = 1e-8;

/// Raised by builders for parameter problems detected after parsing.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---- shared helpers --------------------------------------------------------

inline WalkerState state_by(MethodChoice m, const CoinParameters& p, std::size_t t, std::size_t big_n) {
  switch (m) {
    case MethodChoice::oracle: return evolve(p, t);
    case MethodChoice::closed: return closed_form_state(p, t, big_n);
    case MethodChoice::spectral: return spectral_state(p, t, big_n);
    case MethodChoice::lambda: return state_via_lambda(p, t, lambda_table_recursive(p.theta(), t + 1));
    case MethodChoice::all: break;
  }
  throw ParameterError("method 'all' selects no single route");
}

inline Method provenance(MethodChoice m) {
  switch (m) {
    case MethodChoice::closed: return Method::closed;
    case MethodChoice::spectral: return Method::spectral;
    case MethodChoice::lambda: return Method::lambda;
    default: return Method::oracle;
  }
}

inline ojson base_metadata(std::string_view command, const RunConfig& cfg) {
  ojson m = ojson::object();
  m["tool"] = std::string(kToolName);
  m["command"] = std::string(command);
  m["theta"] = cfg.theta;
  m["theta_input"] = cfg.theta_text;
  m["varphi"] = cfg.varphi;
  m["varphi_input"] = cfg.varphi_text;
  m["eta"] = cfg.eta;
  m["eta_input"] = cfg.eta_text;
  m["steps"] = cfg.steps;
  m["method"] = std::string(to_string(cfg.method));
  m["transform_size"] = std::string(to_string(cfg.transform_size));
  return m;
}

template <typename Fn>
double seconds_of(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Best per-call wall time over `rounds`, each round repeating fn until >= min_round seconds.
template <typename Fn>
double best_time(Fn&& fn, int rounds = 5, double min_round = 0.02) {
  int reps = 1;
  for (;;) {
    const double dt = seconds_of([&] { for (int i = 0; i < reps; ++i) fn(); });
    if (dt >= min_round || reps >= (1 << 20)) break;
    reps *= 2;
  }
  double best = 1e300;
  for (int r = 0; r < rounds; ++r) {
    const double dt = seconds_of([&] { for (int i = 0; i < reps; ++i) fn(); });
    best = std::min(best, dt / reps);
  }
  return best;
}

// ---- simulate --------------------------------------------------------------

/**
 * Rows n = 0..t: n, nu, psi0_re, psi0_im, psi1_re, psi1_im, rho, J, mean_x.
 * J(n,t) comes from the same route evaluated at t+1.  mean_x in row k is
 * <X> at time k (oracle trajectory), so the column holds the full history.
 */
inline Document build_simulation(const RunConfig& cfg, const CoinParameters& p) {
  if (cfg.method == MethodChoice::all) {
    throw ParameterError("simulate needs a single method; use 'compare' for all four");
  }
  const auto t = static_cast<std::size_t>(cfg.steps);
  const std::size_t big_n = cfg.transform_size_for(t);
  const std::size_t big_n_next = cfg.transform_size_for(t + 1);

  std::vector<double> mean_x;
  mean_x.reserve(t + 1);
  evolve_visiting(p, t, [&](const WalkerState& s) { mean_x.push_back(position_mean(pmf(s))); });

  const WalkerState now = state_by(cfg.method, p, t, big_n);
  const WalkerState next = state_by(cfg.method, p, t + 1, big_n_next);
  const PmfSeries rho = pmf(now, provenance(cfg.method));
  const auto current = probability_current(next);

  Document doc;
  doc.metadata = base_metadata("simulate", cfg);
  doc.metadata["provenance"] = std::string(to_string(rho.method));
  doc.metadata["transform_n"] = cfg.method == MethodChoice::closed || cfg.method == MethodChoice::spectral
                                    ? ojson(big_n) : ojson(nullptr);
  doc.metadata["mean_x_provenance"] = "oracle";
  doc.metadata["norm_residual"] = std::abs(rho.total() - 1.0);
  doc.metadata["note"] = "nu = n/t (0 at t = 0); mean_x row k = <X> at time k";
  doc.columns = {"n", "nu", "psi0_re", "psi0_im", "psi1_re", "psi1_im", "rho", "J", "mean_x"};
  for (std::size_t n = 0; n <= t; ++n) {
    const double nu = t == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(t);
    doc.rows.push_back({static_cast<double>(n), nu, now.amp0[n].real(), now.amp0[n].imag(),
                        now.amp1[n].real(), now.amp1[n].imag(), rho.values[n], current[n], mean_x[n]});
  }
  return doc;
}

// ---- compare ---------------------------------------------------------------

struct MethodResult {
  std::string method;
  std::size_t transform_n = 0;
  double max_error = 0.0;
  double seconds = 0.0;
};

struct ComparisonReport {
  std::size_t t = 0;
  double theta = 0, varphi = 0, eta = 0;
  std::vector<MethodResult> methods;  // oracle first, error 0 by definition
  double normalization_residual = 0.0;
  double continuity_residual = 0.0;

  double worst_error() const {
    double w = 0.0;
    for (const auto& m : methods) w = std::max(w, m.max_error);
    return w;
  }
  bool passed(double threshold = kCompareThreshold) const { return worst_error() <= threshold; }
};

/// Angles drawn uniformly over the reduced ranges.
inline CoinParameters random_parameters(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> quarter(0.0, half_pi);
  std::uniform_real_distribution<double> half(0.0, pi);
  const double theta = quarter(rng);
  const double varphi = half(rng);
  const double eta = quarter(rng);
  return {theta, varphi, eta};
}

inline ComparisonReport run_comparison(const CoinParameters& p, std::size_t t, TransformSize size,
                                       double inject_error = 0.0) {
  const std::size_t big_n = size == TransformSize::minimal ? minimal_transform_size(t) : pow2_transform_size(t);
  ComparisonReport rep;
  rep.t = t;
  rep.theta = p.theta();
  rep.varphi = p.varphi();
  rep.eta = p.eta();

  WalkerState oracle;
  const double t_oracle = seconds_of([&] { oracle = evolve(p, t); });
  rep.methods.push_back({"oracle", 0, 0.0, t_oracle});

  WalkerState closed;
  const double t_closed = seconds_of([&] { closed = closed_form_state(p, t, big_n); });
  if (inject_error != 0.0) closed.amp0[0] += inject_error;
  rep.methods.push_back({"closed", big_n, max_component_difference(oracle, closed), t_closed});

  WalkerState spectral;
  const double t_spec = seconds_of([&] { spectral = spectral_state(p, t, big_n); });
  rep.methods.push_back({"spectral", big_n, max_component_difference(oracle, spectral), t_spec});

  WalkerState lam;
  const double t_lam = seconds_of([&] { lam = state_via_lambda(p, t, lambda_table_recursive(p.theta(), t + 1)); });
  rep.methods.push_back({"lambda", 0, max_component_difference(oracle, lam), t_lam});

  rep.normalization_residual = std::abs(pmf(oracle).total() - 1.0);
  rep.continuity_residual = continuity_residual(oracle, step(oracle, make_coin(p)));
  return rep;
}

inline Document comparison_document(const ComparisonReport& rep, const RunConfig& cfg) {
  Document doc;
  doc.metadata = base_metadata("compare", cfg);
  doc.metadata["theta"] = rep.theta;
  doc.metadata["varphi"] = rep.varphi;
  doc.metadata["eta"] = rep.eta;
  if (cfg.seed) doc.metadata["seed"] = *cfg.seed;
  doc.metadata["normalization_residual"] = rep.normalization_residual;
  doc.metadata["continuity_residual"] = rep.continuity_residual;
  doc.metadata["threshold"] = kCompareThreshold;
  doc.metadata["status"] = rep.passed() ? "pass" : "fail";
  doc.metadata["columns"] = "method_id: 0 oracle, 1 closed, 2 spectral, 3 lambda";
  doc.columns = {"method_id", "transform_n", "max_error", "seconds"};
  ojson methods = ojson::array();
  for (std::size_t i = 0; i < rep.methods.size(); ++i) {
    const auto& m = rep.methods[i];
    doc.rows.push_back({static_cast<double>(i), static_cast<double>(m.transform_n), m.max_error, m.seconds});
    methods.push_back({{"method", m.method}, {"transform_n", m.transform_n},
                       {"max_error", m.max_error}, {"seconds", m.seconds}});
  }
  doc.extra["methods"] = std::move(methods);
  return doc;
}

// ---- asymptote -------------------------------------------------------------

/**
 * Rows over the guarded interior: n, nu, rho_exact, rho_bar, rho_sup,
 * rho_inf, rho_med, eps, density.  eps/density tabulate the stationary
 * density at the same grid points.
 */
inline Document build_asymptote(const RunConfig& cfg, const CoinParameters& p) {
  if (cfg.steps < 10) throw ParameterError("asymptote needs at least 10 steps");
  if (p.theta() == half_pi) {
    throw ParameterError("theta = pi/2 collapses the allowed interval to a point; no asymptotic profile");
  }
  const auto t = static_cast<std::size_t>(cfg.steps);
  const double guard = cfg.grid_guard.value_or(default_guard(t));
  const MethodChoice route = cfg.method == MethodChoice::all ? MethodChoice::oracle : cfg.method;
  const PmfSeries exact = pmf(state_by(route, p, t, cfg.transform_size_for(t)), provenance(route));
  const auto grid = guarded_grid(p.theta(), t, guard);
  const AsymptoticProfile prof = rho_bounds(p, t, grid);
  const StationaryDensity density = stationary_density(p);
  const auto [lo, hi] = allowed_interval(p.theta());

  Document doc;
  doc.metadata = base_metadata("asymptote", cfg);
  doc.metadata["provenance"] = std::string(to_string(exact.method)) + "+asymptotic";
  doc.metadata["allowed_interval_lo"] = lo;
  doc.metadata["allowed_interval_hi"] = hi;
  doc.metadata["grid_guard"] = guard;
  doc.metadata["note"] = "rows exclude nu within grid_guard of the interval edges; eps = (2nu-1)/cos(theta)";
  doc.metadata["density_total_mass"] = density.total_mass();
  doc.columns = {"n", "nu", "rho_exact", "rho_bar", "rho_sup", "rho_inf", "rho_med", "eps", "density"};
  for (std::size_t i = 0; i < prof.ns.size(); ++i) {
    const long n = prof.ns[i];
    const double eps = rescaled_position(p.theta(), prof.nus[i]);
    doc.rows.push_back({static_cast<double>(n), prof.nus[i], exact.values[static_cast<std::size_t>(n)],
                        prof.rho_bar[i], prof.rho_sup[i], prof.rho_inf[i], prof.rho_med[i], eps, density(eps)});
  }
  return doc;
}

// ---- bench -----------------------------------------------------------------

struct BenchRow {
  std::size_t t = 0;
  std::size_t n_minimal = 0;
  std::size_t n_pow2 = 0;
  double direct_seconds = 0.0;  // spectral path, N = t+1, O(N^2) inverse
  double fft_seconds = 0.0;     // spectral path, N = 2^m, radix-2 inverse
  double oracle_seconds = 0.0;
  double max_difference = 0.0;  // between the two spectral states

  double ratio() const { return direct_seconds / fft_seconds; }
};

/// 256, 1024, 4096, ... up to max_t.
inline std::vector<std::size_t> bench_sizes(std::size_t max_t) {
  std::vector<std::size_t> sizes;
  for (std::size_t t = 256; t <= max_t; t *= 4) sizes.push_back(t);
  return sizes;
}

inline BenchRow bench_once(const CoinParameters& p, std::size_t t) {
  BenchRow row;
  row.t = t;
  row.n_minimal = minimal_transform_size(t);
  row.n_pow2 = pow2_transform_size(t);
  const WalkerState direct = spectral_state(p, t, row.n_minimal, TransformAlgorithm::direct);
  const WalkerState fast = spectral_state(p, t, row.n_pow2, TransformAlgorithm::radix2);
  row.max_difference = max_component_difference(direct, fast);
  row.direct_seconds = best_time([&] { (void)spectral_state(p, t, row.n_minimal, TransformAlgorithm::direct); });
  row.fft_seconds = best_time([&] { (void)spectral_state(p, t, row.n_pow2, TransformAlgorithm::radix2); });
  row.oracle_seconds = best_time([&] { (void)evolve(p, t); }, 3);
  return row;
}

inline Document bench_document(const std::vector<BenchRow>& rows, const RunConfig& cfg) {
  Document doc;
  doc.metadata = base_metadata("bench", cfg);
  doc.metadata["threads"] = parallel::thread_limit();
  doc.metadata["timing"] = "best per-call wall seconds over 5 rounds";
  doc.columns = {"t", "n_minimal", "n_pow2", "direct_seconds", "fft_seconds", "ratio",
                 "oracle_seconds", "max_difference"};
  for (const auto& r : rows) {
    doc.rows.push_back({static_cast<double>(r.t), static_cast<double>(r.n_minimal),
                        static_cast<double>(r.n_pow2), r.direct_seconds, r.fft_seconds, r.ratio(),
                        r.oracle_seconds, r.max_difference});
  }
  return doc;
}

// ---- exit-code wrappers ----------------------------------------------------

namespace detail {

template <typename Body>
ExitCode guarded(Body&& body) {
  try {
    return body();
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::bad_parameters;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::bad_parameters;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::bad_parameters;
  } catch (const std::exception& e) {
    std::cerr << "error: verification failed: " << e.what() << "\n";
    return ExitCode::verification_failed;
  }
}

}  // namespace detail

inline ExitCode cmd_simulate(RunConfig cfg) {
  return detail::guarded([&] {
    const CoinParameters p = cfg.validate();
    return write_output(render(build_simulation(cfg, p), cfg.output_format), cfg.output_path);
  });
}

inline ExitCode cmd_compare(RunConfig cfg) {
  return detail::guarded([&] {
    CoinParameters p = cfg.validate();
    if (cfg.seed) {
      std::mt19937_64 rng(*cfg.seed);
      p = random_parameters(rng);
      cfg.theta = p.theta();
      cfg.varphi = p.varphi();
      cfg.eta = p.eta();
      cfg.theta_text = cfg.varphi_text = cfg.eta_text = "seeded";
    }
    const ComparisonReport rep =
        run_comparison(p, static_cast<std::size_t>(cfg.steps), cfg.transform_size, cfg.inject_error);
    const ExitCode io = write_output(render(comparison_document(rep, cfg), cfg.output_format), cfg.output_path);
    if (io != ExitCode::ok) return io;
    if (!rep.passed()) {
      std::cerr << "error: method disagreement " << rep.worst_error() << " exceeds " << kCompareThreshold << "\n";
      return ExitCode::verification_failed;
    }
    return ExitCode::ok;
  });
}

inline ExitCode cmd_asymptote(RunConfig cfg) {
  return detail::guarded([&] {
    const CoinParameters p = cfg.validate();
    return write_output(render(build_asymptote(cfg, p), cfg.output_format), cfg.output_path);
  });
}

inline ExitCode cmd_bench(RunConfig cfg) {
  return detail::guarded([&] {
    const CoinParameters p = cfg.validate();
    if (cfg.steps < 256) throw ParameterError("bench needs --steps >= 256");
    std::vector<BenchRow> rows;
    for (std::size_t t : bench_sizes(static_cast<std::size_t>(cfg.steps))) rows.push_back(bench_once(p, t));
    return write_output(render(bench_document(rows, cfg), cfg.output_format), cfg.output_path);
  });
}

}  // namespace qwalk::cli
