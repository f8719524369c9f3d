#include "compsearch/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace compsearch {
namespace {

TEST(SimulateRound, FullTrustWithCorrectPointerEndsOnFirstTurn) {
  const auto params = GameParams::make(4, 2, 0.8);
  SplitMix64 rng(1);
  const auto outcome = simulate_round_with_pointer(params, TrustProfile::symmetric(1.0), true, rng);
  EXPECT_EQ(outcome.finish_turn, 1);
  EXPECT_EQ(outcome.arrivals, 4);
  EXPECT_DOUBLE_EQ(outcome.focal_payoff, 0.25);
  EXPECT_FALSE(outcome.capped);
}

TEST(SimulateRound, ZeroTrustOnALineNeverFindsCorrectlyPointedTreasure) {
  // With k = 1 a searcher that ignores a correct pointer always takes the
  // single decoy ray.
  const auto params = GameParams::make(3, 1, 0.8);
  SplitMix64 rng(2);
  const auto outcome =
      simulate_round_with_pointer(params, TrustProfile::symmetric(0.0), true, rng, 50);
  EXPECT_TRUE(outcome.capped);
  EXPECT_EQ(outcome.finish_turn, 50);
  EXPECT_EQ(outcome.arrivals, 0);
  EXPECT_EQ(outcome.focal_payoff, 0.0);
}

TEST(SimulateRound, TreasureIsSplitAmongArrivers) {
  const auto params = GameParams::make(6, 3, 0.5);
  SplitMix64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto outcome = simulate_round(params, {0.4, 0.7}, rng);
    ASSERT_FALSE(outcome.capped);
    ASSERT_EQ(outcome.payoffs.size(), 6u);
    double total = 0.0;
    int winners = 0;
    for (double share : outcome.payoffs) {
      total += share;
      if (share > 0.0) {
        ++winners;
        EXPECT_DOUBLE_EQ(share, 1.0 / outcome.arrivals);
      }
    }
    EXPECT_EQ(winners, outcome.arrivals);
    EXPECT_NEAR(total, 1.0, 1e-15);
    EXPECT_EQ(outcome.focal_payoff, outcome.payoffs[0]);
  }
}

TEST(EstimatePayoff, AgreesWithClosedForm) {
  struct Case {
    int n, k;
    double p, q, r;
  };
  const Case cases[] = {
      {2, 1, 0.6, 0.5, 0.8}, {5, 3, 0.5, 0.53, 0.7}, {7, 2, 0.45, 0.3, 0.9},
      {3, 4, 0.9, 0.95, 0.2}, {10, 1, 0.7, 0.5, 0.5},
  };
  std::uint64_t seed = 100;
  for (const auto& c : cases) {
    SimulationConfig config{GameParams::make(c.n, c.k, c.p), {c.q, c.r}, 200000, seed++};
    const auto report = estimate_payoff(config);
    const double exact = focal_payoff(config.params, config.profile);
    EXPECT_EQ(report.capped_rounds, 0);
    EXPECT_EQ(report.rounds_completed, 200000);
    EXPECT_LT(std::abs(report.focal_mean_payoff - exact), 4.0 * report.focal_std_error)
        << c.n << " " << c.k;
  }
}

TEST(EstimatePayoff, SymmetricProfileEarnsOneOverN) {
  for (int n : {2, 4, 9}) {
    SimulationConfig config{GameParams::make(n, 2, 0.6), TrustProfile::symmetric(0.62), 200000,
                            static_cast<std::uint64_t>(40 + n)};
    const auto report = estimate_payoff(config);
    EXPECT_LT(std::abs(report.focal_mean_payoff - 1.0 / n), 3.0 * report.focal_std_error);
  }
}

TEST(EstimatePayoff, MeanFinishTurnMatchesGeometricLaw) {
  const auto params = GameParams::make(3, 2, 0.7);
  const double q = 0.4;
  const double q_star = (1.0 - q) / 2;
  const double expected = 0.7 / (1.0 - std::pow(1.0 - q, 3)) +
                          0.3 / (1.0 - std::pow(1.0 - q_star, 3));
  SimulationConfig config{params, TrustProfile::symmetric(q), 200000, 77};
  const auto report = estimate_payoff(config);
  EXPECT_LT(std::abs(report.mean_finish_turn - expected), 3.0 * report.finish_turn_std_error);
}

TEST(EstimatePayoff, ReportIsIndependentOfThreadCount) {
  SimulationConfig config{GameParams::make(5, 3, 0.5), {0.53, 0.7}, 70000, 9};
  const auto one = estimate_payoff(config, 1);
  const auto four = estimate_payoff(config, 4);
  EXPECT_EQ(one.focal_mean_payoff, four.focal_mean_payoff);
  EXPECT_EQ(one.focal_std_error, four.focal_std_error);
  EXPECT_EQ(one.mean_finish_turn, four.mean_finish_turn);
  EXPECT_EQ(one.finish_turn_std_error, four.finish_turn_std_error);
  EXPECT_EQ(one.seed_echo, 9u);

  const auto again = estimate_payoff(config, 1);
  EXPECT_EQ(one.focal_mean_payoff, again.focal_mean_payoff);
  config.seed = 10;
  EXPECT_NE(estimate_payoff(config, 1).focal_mean_payoff, one.focal_mean_payoff);
}

TEST(EstimatePayoff, RoundStreamsMatchStandaloneRounds) {
  const auto params = GameParams::make(4, 2, 0.6);
  const TrustProfile profile{0.5, 0.8};
  double sum = 0.0;
  for (long i = 0; i < 500; ++i) {
    auto rng = SplitMix64::stream(31, static_cast<std::uint64_t>(i));
    sum += simulate_round(params, profile, rng).focal_payoff;
  }
  const auto report = estimate_payoff({params, profile, 500, 31}, 1);
  EXPECT_NEAR(report.focal_mean_payoff, sum / 500, 1e-14);
}

TEST(EstimatePayoff, CountsCappedRounds) {
  SimulationConfig config{GameParams::make(2, 1, 0.9), TrustProfile::symmetric(0.0), 1000, 5, 20};
  const auto report = estimate_payoff(config);
  EXPECT_GT(report.capped_rounds, 800);
  EXPECT_TRUE(report.biased_low());
  EXPECT_EQ(report.rounds_completed, 1000);
}

TEST(EstimatePayoff, RejectsBadConfigs) {
  const auto params = GameParams::make(3, 2, 0.6);
  EXPECT_THROW(estimate_payoff({params, {0.5, 0.5}, 0, 1}), std::domain_error);
  EXPECT_THROW(estimate_payoff({params, {0.5, 1.5}, 10, 1}), std::domain_error);
  EXPECT_THROW(estimate_payoff({params, {-0.1, 0.5}, 10, 1}), std::domain_error);
  EXPECT_THROW(estimate_payoff({params, {0.5, 0.5}, 10, 1, 0}), std::domain_error);
  EXPECT_THROW(estimate_payoff({GameParams{3, 2, 0.2}, {0.5, 0.5}, 10, 1}), InvalidParameter);
}

TEST(SeriesPayoff, HandValueForTwoSearchers) {
  // n=2, k=1, p=2/3, q=1/2, r=1: a correct pointer pays 1/2 + 1/2 * 1/2 on
  // the first turn, and a wrong one pays nothing since the focal searcher
  // never leaves the pointed ray. Total 2/3 * 3/4.
  EXPECT_NEAR(series_payoff(GameParams::make(2, 1, 2.0 / 3), {0.5, 1.0}), 0.5, 1e-15);
}

TEST(SeriesPayoff, AgreesWithClosedFormAndEnumeration) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> n_dist(2, 10);
  std::uniform_int_distribution<int> k_dist(1, 5);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const int k = k_dist(gen);
    const double p = 1.0 / (k + 1) + (1.0 - 1.0 / (k + 1)) * unit(gen);
    const auto params = GameParams::make(n_dist(gen), k, p);
    const TrustProfile profile{unit(gen), unit(gen)};
    const double series = series_payoff(params, profile);
    EXPECT_NEAR(series, focal_payoff(params, profile), 1e-10);
    EXPECT_NEAR(series, testing::enumerated_payoff(params, profile), 1e-10);
  }
}

}  // namespace
}  // namespace compsearch
