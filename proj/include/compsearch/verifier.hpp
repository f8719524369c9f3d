#pragma once

#include <functional>
#include <string>
#include <vector>

#include "compsearch/equilibrium.hpp"
#include "compsearch/model.hpp"

namespace compsearch {

/// Focal payoff over a uniform grid of r in [0,1] with the others at q.
struct BestResponseScan {
  double q_fixed = 0.0;
  std::vector<CurvePoint> grid;  // (r, payoff), ascending r
  double argmax_r = 0.0;
  double max_payoff = 0.0;
  int tied_points = 0;  // grid points within the tie tolerance of the maximum
};

/// Grid points whose payoff is within `tie_rel_tol` (relative) of the best
/// value count as maximisers; among them the one nearest q is reported, so the
/// focal player only moves away from q for a resolvable gain. This matters
/// where the payoff is flat in r to within rounding, e.g. q = p at large n.
BestResponseScan best_response_scan(const GameParams& params, double q, int r_steps = 2001,
                                    double tie_rel_tol = 1e-12);

struct EquilibriumCheck {
  EquilibriumSolution solution;
  BestResponseScan scan;
  double grid_step = 0.0;
  double max_gain = 0.0;  // best grid payoff minus 1/n
  bool argmax_at_q_bar = false;
  bool no_profitable_deviation = false;
  bool residual_vanishes = false;

  bool passed() const { return argmax_at_q_bar && no_profitable_deviation && residual_vanishes; }
};

/// Solves for the equilibrium and confirms (a) the best response on the grid
/// sits within one grid step of q_bar, (b) no grid deviation beats 1/n by
/// more than payoff_tol, (c) |E(q_bar)| <= e_tol.
EquilibriumCheck check_equilibrium(const GameParams& params, double q_tol = 1e-12,
                                   double payoff_tol = 1e-9, int r_steps = 2001,
                                   double e_tol = 1e-10);

struct MatchingEntry {
  int n = 0;
  double q_bar = 0.0;
  double gap = 0.0;      // q_bar - p
  double log_gap = 0.0;  // ln(q_bar - p), resolvable after gap underflows
};

struct MatchingReport {
  int k = 0;
  double p = 0.0;
  double threshold = 0.0;  // decrease_threshold(p, k)
  std::vector<MatchingEntry> entries;
  double final_gap_tolerance = 0.0;
  bool all_positive = false;
  bool decreasing_above_threshold = false;
  bool final_gap_ok = false;
  std::vector<std::string> failures;

  bool passed() const { return all_positive && decreasing_above_threshold && final_gap_ok; }
};

/// Checks q_bar(n) - p along an increasing list of n: every gap positive,
/// gaps strictly shrinking from each listed n above the decrease threshold to
/// the next, and the last gap below tolerance(n_last). Positivity and
/// shrinkage are judged on the log gap, so they stay meaningful at n where
/// the gap itself is below the smallest double.
MatchingReport check_probability_matching(int k, double p, const std::vector<int>& n_list,
                                          const std::function<double(int)>& tolerance);

}  // namespace compsearch
