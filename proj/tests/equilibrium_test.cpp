#include "compsearch/equilibrium.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace compsearch {
namespace {

// High-precision reference roots come from a 60-200 digit bisection on the
// reliability map, written independently of this library.

TEST(SolveEquilibrium, PublishedRootsForFiveSearchersThreeDecoys) {
  const double p[] = {0.5, 2.0 / 3.0, 0.75};
  const double published[] = {0.53, 0.70, 0.78};
  const double reference[] = {0.53047771850659931956, 0.7032416414189347391,
                              0.78323699890176946714};
  for (int i = 0; i < 3; ++i) {
    const auto solution = solve_equilibrium(GameParams::make(5, 3, p[i]));
    EXPECT_NEAR(solution.q_bar, published[i], 0.005);
    EXPECT_NEAR(solution.q_bar, reference[i], 1e-12);
    EXPECT_LT(solution.residual, 1e-12);
    EXPECT_LT(solution.e_residual, 1e-10);
    EXPECT_LE(solution.bracket_hi - solution.bracket_lo, 1e-12);
  }
}

TEST(SolveEquilibrium, TwoSearchersOnALine) {
  // n=2, k=1, p=2/3 has the closed-form root sqrt(3) - 1.
  const auto solution = solve_equilibrium(GameParams::make(2, 1, 2.0 / 3.0));
  EXPECT_NEAR(solution.q_bar, std::sqrt(3.0) - 1.0, 1e-13);
}

TEST(SolveEquilibrium, PremiumKeepsRelativePrecisionBelowResolutionOfQ) {
  struct Case {
    int n, k;
    double p, premium;
  };
  const Case cases[] = {
      {60, 2, 0.7, 2.1581578465309547783e-6},
      {100, 1, 0.55, 2.2013747244522978921e-27},
      {1000, 3, 0.5, 3.2940027447386159698e-81},
  };
  for (const auto& c : cases) {
    const auto solution = solve_equilibrium(GameParams::make(c.n, c.k, c.p));
    EXPECT_NEAR(solution.premium / c.premium, 1.0, 1e-9) << c.n;
    EXPECT_NEAR(solution.log_premium, std::log(c.premium), 1e-9) << c.n;
    EXPECT_GE(solution.q_bar, c.p);
  }
  EXPECT_NEAR(solve_equilibrium(GameParams::make(60, 2, 0.7)).q_bar, 0.70000215815784648655,
              1e-15);
}

TEST(SolveEquilibrium, LogPremiumContinuesPastUnderflow) {
  EXPECT_NEAR(solve_equilibrium(GameParams::make(5000, 3, 0.5)).log_premium,
              -914.60351624332712205, 1e-9 * 914.6);
  // Successive ratios approach (1 - p*) = 5/6 on both sides of the point
  // where the premium leaves the double range (near n = 3880).
  double previous = solve_equilibrium(GameParams::make(3000, 3, 0.5)).log_premium;
  for (int n = 3001; n <= 4800; n += 1) {
    const double current = solve_equilibrium(GameParams::make(n, 3, 0.5)).log_premium;
    ASSERT_NEAR(current - previous, std::log(5.0 / 6.0), 1e-6) << n;
    previous = current;
  }
}

TEST(SolveEquilibrium, ConvergesToReliabilityForLargeN) {
  const auto solution = solve_equilibrium(GameParams::make(100000, 3, 0.5));
  EXPECT_GE(solution.q_bar - 0.5, 0.0);
  EXPECT_LT(solution.q_bar - 0.5, 1e-3);
  EXPECT_TRUE(std::isfinite(solution.log_premium));
  EXPECT_LT(solution.log_premium, std::log(1e-3));
}

TEST(SolveEquilibrium, InvariantsOnRandomInstances) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<int> n_dist(2, 100);
  std::uniform_int_distribution<int> k_dist(1, 10);
  std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
  for (int i = 0; i < 300; ++i) {
    const int k = k_dist(gen);
    const double p = 1.0 / (k + 1) + (1.0 - 1.0 / (k + 1)) * unit(gen);
    const auto params = GameParams::make(n_dist(gen), k, p);
    const auto solution = solve_equilibrium(params);
    EXPECT_GT(solution.q_bar, 1.0 / (k + 1));
    EXPECT_LT(solution.q_bar, 1.0);
    EXPECT_GE(solution.q_bar, p);
    EXPECT_GT(solution.premium, 0.0);
    EXPECT_LT(solution.residual, 1e-12);
  }
}

TEST(SolveEquilibrium, PayoffIsStationaryInFocalTrustAtTheRoot) {
  for (const auto& params :
       {GameParams::make(5, 3, 0.5), GameParams::make(2, 1, 0.7), GameParams::make(30, 6, 0.4),
        GameParams::make(12, 2, 0.95)}) {
    const double q_bar = solve_equilibrium(params).q_bar;
    const double h = 1e-6;
    const double slope =
        (focal_payoff(params, {q_bar, q_bar + h}) - focal_payoff(params, {q_bar, q_bar - h})) /
        (2 * h);
    EXPECT_LT(std::abs(slope), 1e-5);
  }
}

TEST(SolveEquilibrium, IncreasesWithReliability) {
  for (int n : {2, 5, 20}) {
    for (int k : {1, 3, 7}) {
      double previous = 0.0;
      for (int i = 1; i < 40; ++i) {
        const double p = 1.0 / (k + 1) + (1.0 - 1.0 / (k + 1)) * i / 40;
        const double q_bar = solve_equilibrium(GameParams::make(n, k, p)).q_bar;
        EXPECT_GT(q_bar, previous);
        previous = q_bar;
      }
    }
  }
}

TEST(SolveEquilibrium, EventuallyDecreasingInN) {
  const int ks[] = {1, 3, 10};
  for (int k : ks) {
    for (double p : {0.5, 0.75, 0.9}) {
      if (!(p > 1.0 / (k + 1))) p = 0.55;
      const int start = static_cast<int>(std::ceil(decrease_threshold(p, k))) + 1;
      double previous = solve_equilibrium(GameParams::make(start, k, p)).log_premium;
      for (int n = start + 1; n <= start + 60; ++n) {
        const double current = solve_equilibrium(GameParams::make(n, k, p)).log_premium;
        EXPECT_LT(current, previous) << "k=" << k << " p=" << p << " n=" << n;
        previous = current;
      }
    }
  }
}

TEST(SolveEquilibrium, BitIdenticalOnRepeat) {
  const auto params = GameParams::make(9, 4, 0.61);
  const auto a = solve_equilibrium(params);
  const auto b = solve_equilibrium(params);
  EXPECT_EQ(a.q_bar, b.q_bar);
  EXPECT_EQ(a.premium, b.premium);
  EXPECT_EQ(a.residual, b.residual);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.bracket_lo, b.bracket_lo);
  EXPECT_EQ(a.bracket_hi, b.bracket_hi);
}

TEST(SolveEquilibrium, ReportsUnreachableToleranceWithBracket) {
  try {
    solve_equilibrium(GameParams::make(5, 3, 0.5), 1e-15, 5);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_LT(e.bracket_lo, 0.5305);
    EXPECT_GT(e.bracket_hi, 0.5304);
  }
  EXPECT_THROW(solve_equilibrium(GameParams{5, 3, 0.2}), InvalidParameter);
}

TEST(ResidualCurve, CrossesZeroNearPublishedRoot) {
  const auto curve = sample_residual_curve(GameParams::make(5, 3, 0.5), 1.0 / 3, 0.8, 100);
  ASSERT_EQ(curve.points.size(), 100u);
  EXPECT_EQ(curve.points.front().x, 1.0 / 3);
  EXPECT_EQ(curve.points.back().x, 0.8);
  int crossings = 0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (curve.points[i - 1].y > 0 && curve.points[i].y < 0) {
      ++crossings;
      EXPECT_NEAR(curve.points[i].x, 0.53, 0.01);
    }
  }
  EXPECT_EQ(crossings, 1);
}

TEST(ResidualCurve, EndsAtZeroForFullTrust) {
  const auto curve = sample_residual_curve(GameParams::make(5, 3, 2.0 / 3), 0.5, 1.0, 11);
  EXPECT_EQ(curve.points.back().x, 1.0);
  EXPECT_EQ(curve.points.back().y, 0.0);
}

TEST(ResidualCurve, RisesWithReliability) {
  const auto low = sample_residual_curve(GameParams::make(5, 3, 0.5), 0.34, 0.99, 200);
  const auto mid = sample_residual_curve(GameParams::make(5, 3, 2.0 / 3), 0.34, 0.99, 200);
  const auto high = sample_residual_curve(GameParams::make(5, 3, 0.75), 0.34, 0.99, 200);
  for (std::size_t i = 0; i < low.points.size(); ++i) {
    EXPECT_LT(low.points[i].y, mid.points[i].y);
    EXPECT_LT(mid.points[i].y, high.points[i].y);
  }
}

TEST(ResidualCurve, RejectsBadGrids) {
  const auto params = GameParams::make(5, 3, 0.5);
  EXPECT_THROW(sample_residual_curve(params, 0.5, 0.5, 10), std::domain_error);
  EXPECT_THROW(sample_residual_curve(params, -0.1, 0.5, 10), std::domain_error);
  EXPECT_THROW(sample_residual_curve(params, 0.2, 1.1, 10), std::domain_error);
  EXPECT_THROW(sample_residual_curve(params, 0.2, 0.9, 1), std::domain_error);
}

TEST(ReliabilityCurve, BelowDiagonalAndIncreasing) {
  const auto curve = sample_reliability_curve(5, 3, 0.26, 0.999, 300);
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    EXPECT_LT(curve.points[i].y, curve.points[i].x);
    if (i > 0) EXPECT_GT(curve.points[i].y, curve.points[i - 1].y);
  }
  EXPECT_GT(sample_reliability_curve(5, 3, 0.5, 1.0 - 1e-9, 2).points.back().y, 1.0 - 1e-6);
}

TEST(ReliabilityCurve, OrderedByPopulationForThreeDecoys) {
  // For k = 3 the curves for n = 2, 3, 4 are nested, so the equilibrium trust
  // at any fixed p falls as n grows from 2 to 4.
  const auto two = sample_reliability_curve(2, 3, 0.26, 0.99, 150);
  const auto three = sample_reliability_curve(3, 3, 0.26, 0.99, 150);
  const auto four = sample_reliability_curve(4, 3, 0.26, 0.99, 150);
  for (std::size_t i = 0; i < two.points.size(); ++i) {
    EXPECT_LT(two.points[i].y, three.points[i].y);
    EXPECT_LT(three.points[i].y, four.points[i].y);
  }
}

TEST(ReliabilityCurve, RejectsRangesOutsideOpenInterval) {
  EXPECT_THROW(sample_reliability_curve(5, 3, 0.25, 0.9, 10), std::domain_error);
  EXPECT_THROW(sample_reliability_curve(5, 3, 0.3, 1.0, 10), std::domain_error);
  EXPECT_THROW(sample_reliability_curve(1, 3, 0.3, 0.9, 10), std::domain_error);
}

TEST(SweepInN, StrictlyDecreasingAboveThreshold) {
  const int first = static_cast<int>(std::ceil(decrease_threshold(0.5, 3)));
  ASSERT_EQ(first, 8);
  std::vector<int> ns;
  for (int n = first; n <= first + 20; ++n) ns.push_back(n);
  const auto curve = sweep_in_n(3, 0.5, ns);
  EXPECT_EQ(curve.abscissa_name, "n");
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    EXPECT_LT(curve.points[i].y, curve.points[i - 1].y);
    EXPECT_GT(curve.points[i].y, 0.5);
  }
}

TEST(SweepInN, ApproachesReliabilityFromAbove) {
  const auto curve = sweep_in_n(3, 0.5, {100, 1000, 10000});
  EXPECT_GT(curve.points[0].y, 0.5);
  EXPECT_LT(curve.points[0].y - 0.5, 1e-8);
  double previous = 0.0;
  for (int n : {100, 1000, 10000}) {
    const auto solution = solve_equilibrium(GameParams::make(n, 3, 0.5));
    EXPECT_GE(solution.q_bar, 0.5);
    if (n > 100) EXPECT_LT(solution.log_premium, previous);
    previous = solution.log_premium;
  }
  EXPECT_THROW(sweep_in_n(3, 0.5, {10, 10}), std::domain_error);
  EXPECT_THROW(sweep_in_n(3, 0.5, {1, 2}), InvalidParameter);
}

TEST(SweepInK, IncreasingInDecoys) {
  std::vector<int> ks;
  for (int k = 1; k <= 10; ++k) ks.push_back(k);
  const auto curve = sweep_in_k(5, 0.5, {2, 3, 4, 5, 6, 7, 8, 9, 10});
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    EXPECT_GT(curve.points[i].y, curve.points[i - 1].y);
  }
  const auto lower = sweep_in_k(5, 0.4, {2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_EQ(lower.points.front().x, 2.0);
  for (std::size_t i = 1; i < lower.points.size(); ++i) {
    EXPECT_GT(lower.points[i].y, lower.points[i - 1].y);
  }
  EXPECT_THROW(sweep_in_k(5, 0.5, ks), InvalidParameter);  // k=1 needs p > 1/2
  EXPECT_THROW(sweep_in_k(5, 0.3, {1}), InvalidParameter);
}

}  // namespace
}  // namespace compsearch
