#include <gtest/gtest.h>

#include <cmath>

#include "qwalk/evolution.hpp"
#include "qwalk/observables.hpp"
#include "support.hpp"

using namespace qwalk;

TEST(Evolution, ZeroStepsReturnsInitialState) {
  const CoinParameters p(pi / 6, 0.0, pi / 6);
  const WalkerState s = evolve(p, 0);
  EXPECT_EQ(s.t, 0u);
  EXPECT_EQ(pmf(s).values, std::vector<double>{1.0});
}

TEST(Evolution, OneStepMatchesCoinAction) {
  const CoinParameters p(0.4, 1.1, 0.7);
  const WalkerState s = evolve(p, 1);
  const Complex e(std::cos(1.1), std::sin(1.1));
  EXPECT_NEAR(std::abs(s.amp0[0] - (std::cos(0.4) * std::cos(0.7) + std::conj(e) * std::sin(0.4) * std::sin(0.7))), 0, 1e-16);
  EXPECT_NEAR(std::abs(s.amp1[1] - (e * std::sin(0.4) * std::cos(0.7) - std::cos(0.4) * std::sin(0.7))), 0, 1e-16);
  EXPECT_EQ(s.amp1[0], Complex(0.0));
  EXPECT_EQ(s.amp0[1], Complex(0.0));
}

TEST(Evolution, HadamardWalkFirstSteps) {
  // theta = pi/4, varphi = 0 is the Hadamard coin; start in chirality 0
  const CoinParameters p(pi / 4, 0.0, 0.0);
  const auto two = pmf(evolve(p, 2)).values;
  ASSERT_EQ(two.size(), 3u);
  EXPECT_NEAR(two[0], 0.25, 1e-15);
  EXPECT_NEAR(two[1], 0.50, 1e-15);
  EXPECT_NEAR(two[2], 0.25, 1e-15);
  const auto three = pmf(evolve(p, 3)).values;
  ASSERT_EQ(three.size(), 4u);
  EXPECT_NEAR(three[0], 0.125, 1e-15);
  EXPECT_NEAR(three[1], 0.625, 1e-15);
  EXPECT_NEAR(three[2], 0.125, 1e-15);
  EXPECT_NEAR(three[3], 0.125, 1e-15);
}

TEST(Evolution, SupportGrowsByOneSitePerStep) {
  const CoinParameters p(0.9, 0.2, 0.3);
  std::size_t expected = 0;
  evolve_visiting(p, 25, [&](const WalkerState& s) {
    EXPECT_EQ(s.t, expected);
    EXPECT_EQ(s.sites(), expected + 1);
    EXPECT_NO_THROW(s.check_shape());
    ++expected;
  });
  EXPECT_EQ(expected, 26u);
}

TEST(Evolution, NormIsPreservedOverRandomParameters) {
  for (const auto& p : testkit::random_triples(30)) {
    const MonitoredEvolution run = evolve_monitored(p, 300);
    EXPECT_LT(run.max_norm_drift, 1e-12);
    EXPECT_EQ(run.state.t, 300u);
  }
}

TEST(Evolution, ThetaZeroSplitsToTheEdges) {
  const CoinParameters p(0.0, 0.7, 0.3);
  const WalkerState s = evolve(p, 9);
  const auto rho = pmf(s).values;
  EXPECT_NEAR(rho[0], std::cos(0.3) * std::cos(0.3), 1e-15);
  EXPECT_NEAR(rho[9], std::sin(0.3) * std::sin(0.3), 1e-15);
  for (std::size_t n = 1; n < 9; ++n) EXPECT_EQ(rho[n], 0.0);
}

TEST(Evolution, PmfCarriesItsProvenance) {
  const CoinParameters p(0.5, 0.5, 0.5);
  EXPECT_EQ(pmf(evolve(p, 3), Method::closed).method, Method::closed);
  EXPECT_EQ(pmf(evolve(p, 3)).method, Method::oracle);
}
