#pragma once

// Closed-form kernel of the n-searcher race on a star with k+1 rays, where a
// shared pointer names the treasure ray with reliability p. A searcher follows
// the pointer with its trust probability and otherwise picks one of the other
// k rays uniformly.

#include <stdexcept>
#include <string>

namespace compsearch {

/// Thrown when a game parameter violates its invariant. The message names the
/// violated condition, e.g. "p must exceed 1/(k+1)".
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One game instance: n searchers, k decoy rays, pointer reliability p.
///
/// Valid instances satisfy n >= 2, k >= 1 and 1/(k+1) < p < 1. Use `make` to
/// construct a validated value; the aggregate stays open so tests can build
/// deliberately invalid triples and feed them to `validate`.
struct GameParams {
  int n = 2;
  int k = 1;
  double p = 0.75;

  static GameParams make(int n, int k, double p);
  void validate() const;
};

/// Population trust q (the n-1 others) and focal trust r.
struct TrustProfile {
  double q = 0.5;
  double r = 0.5;

  static TrustProfile symmetric(double q) { return {q, q}; }
};

/// Probability that a searcher with trust x picks one particular non-pointed
/// ray: (1-x)/k.
double derived(double x, int k);

/// (1-x)^n. Exponentiation by squaring up to n = 1024, exp(n*log1p(-x))
/// beyond.
double survival_power(double x, long n);

/// 1-(1-x)^n evaluated without cancellation for small x.
double hit_probability(double x, long n);

/// Expected share of the unit treasure won by the focal searcher.
///
/// Requires 0 < q < 1 so that both pointer branches have a positive per-turn
/// discovery probability; r may be anywhere in [0,1].
double focal_payoff(const GameParams& params, const TrustProfile& profile);

/// Many-searcher approximation (1/n)(p r/q + (1-p)(1-r)/(1-q)), valid when
/// the chance that nobody among the others finds H on the first turn is
/// negligible.
double focal_payoff_large_n(const GameParams& params, const TrustProfile& profile);

/// Residual whose interior root in q is the symmetric equilibrium trust.
/// Vanishes identically at q = 1 as well, so it is not used for bracketing.
double equilibrium_residual(const GameParams& params, double q);

/// Reliability p for which q is the symmetric equilibrium trust. Strictly
/// increasing on the open interval (1/(k+1), 1), with limits 1/(k+1) and 1.
double reliability_for_trust(int n, int k, double q);

/// Population size above which equilibrium trust strictly decreases in n:
/// 3 + 2 ln k / ln((k-1+p)/(k(1-p))).
double decrease_threshold(double p, int k);

/// Optimal trust for a lone searcher minimising expected arrival time, used
/// as a comparison baseline. Undefined at p = k/(k+1).
double single_searcher_trust(double p, int k);

}  // namespace compsearch
