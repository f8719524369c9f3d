#pragma once

// Monte Carlo play of the star race. Searcher 0 is the focal player with trust
// r; searchers 1..n-1 use trust q.
//
// Each round the pointer is correct with probability p and stays fixed for the
// round. Every turn each searcher independently follows the pointer with its
// trust probability, otherwise it picks one of the k non-pointed rays
// uniformly. Choices are redrawn every turn. The round ends on the first turn
// with at least one arrival at H; the arrivers split the unit treasure
// equally. A round with no arrival within max_turns is capped and pays 0 to
// everyone.

#include <cstdint>
#include <vector>

#include "compsearch/model.hpp"
#include "compsearch/rng.hpp"

namespace compsearch {

struct SimulationConfig {
  GameParams params;
  TrustProfile profile;
  long rounds = 100000;
  std::uint64_t seed = 0;
  long max_turns = 1000000;

  void validate() const;
};

struct RoundOutcome {
  double focal_payoff = 0.0;
  std::vector<double> payoffs;  // one entry per searcher, focal first
  long finish_turn = 0;         // turn of first arrival; max_turns when capped
  int arrivals = 0;             // searchers sharing the treasure
  bool pointer_correct = false;
  bool capped = false;
};

struct SimulationReport {
  long rounds_completed = 0;
  long capped_rounds = 0;
  double focal_mean_payoff = 0.0;
  double focal_std_error = 0.0;
  double mean_finish_turn = 0.0;  // over uncapped rounds
  double finish_turn_std_error = 0.0;
  std::uint64_t seed_echo = 0;

  /// Capped rounds pay nothing, so the payoff estimate is then biased low.
  bool biased_low() const { return capped_rounds > 0; }
};

/// One round with the pointer correctness drawn from p.
RoundOutcome simulate_round(const GameParams& params, const TrustProfile& profile,
                            SplitMix64& rng, long max_turns = 1000000);

/// One round with the pointer correctness fixed by the caller.
RoundOutcome simulate_round_with_pointer(const GameParams& params, const TrustProfile& profile,
                                         bool pointer_correct, SplitMix64& rng,
                                         long max_turns = 1000000);

/// Runs config.rounds independent rounds. Round i draws from
/// SplitMix64::stream(seed, i), and rounds are reduced in fixed-size blocks
/// merged in block order, so the report is bit-identical for any `threads`
/// (0 picks the hardware concurrency).
SimulationReport estimate_payoff(const SimulationConfig& config, unsigned threads = 0);

/// Focal payoff obtained by summing expected shares turn by turn: for each
/// pointer branch, sum B^(t-1) A over t where A is the binomial expectation of
/// the focal share on one turn (explicit sum over the number of co-arrivers)
/// and B the probability nobody arrives. Summation stops once the geometric
/// tail is below tail_tol. Shares its domain with focal_payoff.
double series_payoff(const GameParams& params, const TrustProfile& profile,
                     double tail_tol = 1e-14);

}  // namespace compsearch
