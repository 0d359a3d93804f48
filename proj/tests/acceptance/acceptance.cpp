// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances are fixed here and must not be loosened to make a line green.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "qwalk/qwalk.hpp"
#include "support.hpp"

#ifndef QWALK_FIXTURE_DIR
#error "QWALK_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace {

using namespace qwalk;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---- 1 --------------------------------------------------------------------

constexpr double kEquivalenceTol = 1e-10;
constexpr double kEquivalenceSeconds = 60.0;

Outcome method_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  double worst_closed = 0, worst_spectral = 0, worst_fft = 0, worst_lambda = 0;
  for (const auto& p : testkit::random_triples(50)) {
    const LambdaTable table = lambda_table_recursive(p.theta(), 65);
    WalkerState oracle = make_initial_state(p);
    const CoinMatrix coin = make_coin(p);
    for (std::size_t t = 1; t <= 64; ++t) {
      oracle = step(oracle, coin);
      worst_closed = std::max(worst_closed,
                              max_component_difference(oracle, closed_form_state(p, t, minimal_transform_size(t))));
      worst_spectral = std::max(worst_spectral, max_component_difference(
          oracle, spectral_state(p, t, minimal_transform_size(t), TransformAlgorithm::direct)));
      worst_fft = std::max(worst_fft, max_component_difference(
          oracle, spectral_state(p, t, pow2_transform_size(t), TransformAlgorithm::radix2)));
      worst_lambda = std::max(worst_lambda, max_component_difference(oracle, state_via_lambda(p, t, table)));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double worst = std::max({worst_closed, worst_spectral, worst_fft, worst_lambda});
  return {worst < kEquivalenceTol && secs < kEquivalenceSeconds,
          "closed " + fmt("%.2e", worst_closed) + ", spectral(N=t+1) " + fmt("%.2e", worst_spectral) +
              ", spectral(FFT) " + fmt("%.2e", worst_fft) + ", lambda " + fmt("%.2e", worst_lambda) +
              " (limit 1e-10); " + fmt("%.2f", secs) + " s (limit 60 s)"};
}

// ---- 2 --------------------------------------------------------------------

constexpr double kFigureTol = 1e-10;

Outcome golden_fixtures() {
  double worst = 0.0;
  std::size_t rows = 0;
  const std::pair<const char*, double> cases[] = {{"walk_t30_phi0.csv", 0.0}, {"walk_t30_phipi.csv", pi}};
  for (const auto& [file, varphi] : cases) {
    const auto table = testkit::read_csv(std::string(QWALK_FIXTURE_DIR) + "/" + file);
    const CoinParameters p(pi / 6.0, varphi, pi / 6.0);
    const PmfSeries closed = pmf(closed_form_state(p, 30, minimal_transform_size(30)), Method::closed);
    const PmfSeries oracle = pmf(evolve(p, 30));
    const std::size_t rho = table.column("rho");
    if (table.rows.size() != 31) return {false, std::string(file) + " does not hold 31 rows"};
    for (std::size_t n = 0; n <= 30; ++n) {
      worst = std::max({worst, std::abs(closed.values[n] - table.rows[n][rho]),
                        std::abs(closed.values[n] - oracle.values[n])});
      ++rows;
    }
  }
  return {worst < kFigureTol,
          "t=30, theta=eta=pi/6, varphi in {0, pi}: " + std::to_string(rows) + " sites, max |closed - fixture| " +
              fmt("%.2e", worst) + " (limit 1e-10)"};
}

// ---- 3 --------------------------------------------------------------------

constexpr double kNormTol = 1e-12;
constexpr double kContinuityTol = 1e-13;
constexpr double kEhrenfestTol = 1e-11;

Outcome conservation() {
  double norm = 0, cont = 0, ehren = 0;
  for (const auto& p : testkit::random_triples(50)) {
    WalkerState prev;
    bool first = true;
    double mean0 = 0, increments = 0;
    evolve_visiting(p, 200, [&](const WalkerState& s) {
      const PmfSeries rho = pmf(s);
      norm = std::max(norm, std::abs(rho.total() - 1.0));
      const double mean = position_mean(rho);
      if (first) {
        mean0 = mean;
        first = false;
      } else {
        cont = std::max(cont, continuity_residual(prev, s));
        const double inc = ehrenfest_increment(s);
        increments += inc;
        ehren = std::max({ehren, std::abs(mean - position_mean(pmf(prev)) - inc),
                          std::abs(mean - mean0 - increments)});
      }
      prev = s;
    });
  }
  return {norm < kNormTol && cont < kContinuityTol && ehren < kEhrenfestTol,
          "t<=200, 50 triples: |sum rho - 1| " + fmt("%.2e", norm) + " (1e-12), continuity " + fmt("%.2e", cont) +
              " (1e-13), Ehrenfest " + fmt("%.2e", ehren) + " (1e-11)"};
}

// ---- 4 --------------------------------------------------------------------

constexpr double kSymmetryTol = 1e-12;

Outcome exact_symmetry() {
  double worst = 0.0;
  std::vector<CoinParameters> cases;
  for (double theta : {0.0, pi / 12, pi / 6, pi / 4, pi / 3, 5 * pi / 12, half_pi}) {
    cases.emplace_back(theta, half_pi, pi / 4);
  }
  for (double varphi : {0.0, pi / 3, half_pi, pi}) cases.emplace_back(half_pi, varphi, pi / 4);
  for (const auto& p : cases) {
    evolve_visiting(p, 100, [&](const WalkerState& s) { worst = std::max(worst, reflection_residual(pmf(s))); });
  }
  return {worst < kSymmetryTol, std::to_string(cases.size()) + " parameter sets, t<=100: max reflection residual " +
                                    fmt("%.2e", worst) + " (limit 1e-12)"};
}

// ---- 5 --------------------------------------------------------------------

constexpr double kSpecialTol = 1e-14;

double special_case_error(const CoinParameters& p, std::size_t t, const std::vector<double>& expected) {
  double worst = 0.0;
  const LambdaTable table = lambda_table_recursive(p.theta(), t + 1);
  const PmfSeries routes[] = {pmf(evolve(p, t)),
                              pmf(closed_form_state(p, t, minimal_transform_size(t))),
                              pmf(spectral_state(p, t, pow2_transform_size(t))),
                              pmf_via_lambda(p, t, table)};
  for (const auto& rho : routes) {
    for (std::size_t n = 0; n <= t; ++n) worst = std::max(worst, std::abs(rho.values[n] - expected[n]));
  }
  return worst;
}

Outcome special_cases() {
  double endpoint = 0.0, confined = 0.0;
  for (double varphi : {0.0, half_pi, pi}) {
    const CoinParameters p(0.0, varphi, pi / 4);
    for (std::size_t t = 1; t <= 100; ++t) {
      std::vector<double> expected(t + 1, 0.0);
      expected[0] += 0.5;
      expected[t] += 0.5;
      endpoint = std::max(endpoint, special_case_error(p, t, expected));
    }
  }
  for (double eta : {0.0, pi / 6, pi / 4, half_pi}) {
    for (double varphi : {0.0, 1.0, pi}) {
      const CoinParameters p(half_pi, varphi, eta);
      const double s2 = p.sin_eta() * p.sin_eta();
      const double c2 = p.cos_eta() * p.cos_eta();
      for (std::size_t t = 0; t <= 100; ++t) {
        std::vector<double> expected(t + 1, 0.0);
        for (std::size_t n = 0; n <= t; ++n) {
          if (2 * n == t) expected[n] += 1.0;
          if (2 * n + 1 == t) expected[n] += s2;
          if (2 * n == t + 1) expected[n] += c2;
        }
        confined = std::max(confined, special_case_error(p, t, expected));
      }
    }
  }
  return {endpoint < kSpecialTol && confined < kSpecialTol,
          "all four routes, t<=100: endpoint concentration " + fmt("%.2e", endpoint) + ", confinement " +
              fmt("%.2e", confined) + " (limit 1e-14)"};
}

// ---- 6 --------------------------------------------------------------------

constexpr double kEtaTol = 1e-12;

Outcome approximate_symmetry() {
  const double e1 = std::abs(approximate_symmetry_eta(pi / 4, pi) - pi / 8);
  const double e2 = std::abs(approximate_symmetry_eta(pi / 6, pi) - pi / 6);
  bool monotone = true;
  std::string trail;
  for (const auto& [theta, eta] : {std::pair{pi / 4, pi / 8}, std::pair{pi / 6, pi / 6}}) {
    const CoinParameters p(theta, pi, eta);
    double last = INFINITY;
    for (std::size_t t : {30u, 100u, 300u}) {
      const double r = reflection_residual(pmf(evolve(p, t)));
      monotone = monotone && r < last;
      last = r;
      trail += (trail.empty() ? "" : " ") + fmt("%.2e", r);
    }
    trail += ";";
  }
  return {e1 < kEtaTol && e2 < kEtaTol && monotone,
          "eta errors " + fmt("%.1e", e1) + ", " + fmt("%.1e", e2) + " (limit 1e-12); residual at t=30,100,300: " +
              trail + (monotone ? " decreasing" : " NOT decreasing")};
}

// ---- 7 --------------------------------------------------------------------

constexpr double kMidpointTol = 0.05;

Outcome asymptotic_midpoint() {
  const std::size_t t = 2000;
  const double theta = pi / 6;
  const CoinParameters p(theta, half_pi, pi / 4);
  const double rho = pmf(evolve(p, t)).values[t / 2];
  const double ratio = rho * pi * static_cast<double>(t) / (2.0 * std::tan(theta));
  return {std::abs(ratio - 1.0) < kMidpointTol,
          "t=2000, theta=pi/6, eta=pi/4, varphi=pi/2: rho(t/2) pi t / (2 tan theta) = " + fmt("%.5f", ratio) +
              " (|x - 1| limit 0.05)"};
}

// ---- 8 --------------------------------------------------------------------

constexpr double kWeakLimitTol = 0.02;

/// sup_n |sum_{k<=n} rho(k) - F(eps at n + 1/2)|
double weak_limit_distance(const CoinParameters& p, std::size_t t) {
  const PmfSeries rho = pmf(evolve(p, t));
  const StationaryDensity density(p);
  double acc = 0.0, worst = 0.0;
  for (std::size_t n = 0; n <= t; ++n) {
    acc += rho.values[n];
    const double nu = (static_cast<double>(n) + 0.5) / static_cast<double>(t);
    worst = std::max(worst, std::abs(acc - density.cdf(rescaled_position(p.theta(), nu))));
  }
  return worst;
}

Outcome weak_limit() {
  const CoinParameters triples[] = {{pi / 6, 0.0, pi / 6}, {pi / 4, pi, pi / 8}, {pi / 3, half_pi, 0.3}};
  bool pass = true;
  std::string detail;
  for (const auto& p : triples) {
    double last = INFINITY;
    bool monotone = true;
    std::string trail;
    for (std::size_t t : {500u, 1000u, 2000u, 4000u}) {
      const double d = weak_limit_distance(p, t);
      monotone = monotone && d < last;
      last = d;
      trail += (trail.empty() ? "" : " ") + fmt("%.4f", d);
    }
    pass = pass && monotone && last < kWeakLimitTol;
    detail += (detail.empty() ? "" : "; ") + trail;
  }
  return {pass, "sup-distance at t=500,1000,2000,4000: " + detail + " (final limit 0.02, decreasing)"};
}

// ---- 9 --------------------------------------------------------------------

constexpr double kCoverageFraction = 0.90;
constexpr double kBandWidening = 0.10;

Outcome envelope_coverage() {
  const std::size_t t = 100;
  const CoinParameters cases[] = {{pi / 6, 0.0, pi / 6}, {pi / 6, pi, pi / 6}, {pi / 4, half_pi, pi / 4}};
  bool pass = true;
  std::string detail;
  for (const auto& p : cases) {
    const PmfSeries rho = pmf(evolve(p, t));
    const AsymptoticProfile prof = rho_bounds(p, t, guarded_grid(p.theta(), t, default_guard(t)));
    std::size_t inside = 0;
    for (std::size_t i = 0; i < prof.ns.size(); ++i) {
      const double pad = kBandWidening * prof.rho_med[i];
      const double v = rho.values[static_cast<std::size_t>(prof.ns[i])];
      if (v >= prof.rho_inf[i] - pad && v <= prof.rho_sup[i] + pad) ++inside;
    }
    const double frac = prof.ns.empty() ? 0.0 : static_cast<double>(inside) / static_cast<double>(prof.ns.size());
    pass = pass && frac >= kCoverageFraction;
    detail += (detail.empty() ? "" : ", ") + fmt("%.3f", frac);
  }
  return {pass, "t=100 coverage " + detail + " (limit 0.90)"};
}

// ---- 10 -------------------------------------------------------------------

constexpr double kSpeedup = 5.0;
constexpr double kPathAgreement = 1e-11;

Outcome performance() {
  const CoinParameters p(pi / 6, 0.0, pi / 6);
  std::vector<cli::BenchRow> rows;
  for (std::size_t t : {256u, 1024u, 4096u}) rows.push_back(cli::bench_once(p, t));
  bool monotone = true;
  double agree = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].ratio() < rows[i - 1].ratio()) monotone = false;
    agree = std::max(agree, rows[i].max_difference);
    detail += (detail.empty() ? "" : ", ") + fmt("%.1fx", rows[i].ratio());
  }
  const bool fast = rows.back().ratio() >= kSpeedup;
  return {fast && monotone && agree < kPathAgreement,
          "direct/FFT at t=256,1024,4096: " + detail + (monotone ? " (non-decreasing)" : " (NOT non-decreasing)") +
              ", max state difference " + fmt("%.2e", agree) + " (limits 5x, 1e-11)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"method equivalence", method_equivalence},  {"golden fixtures", golden_fixtures},
      {"conservation", conservation},              {"exact symmetry", exact_symmetry},
      {"special cases", special_cases},            {"approximate symmetry", approximate_symmetry},
      {"asymptotic midpoint", asymptotic_midpoint}, {"weak limit", weak_limit},
      {"envelope coverage", envelope_coverage},    {"performance", performance},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2d %-22s %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
