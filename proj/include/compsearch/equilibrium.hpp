#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "compsearch/model.hpp"

namespace compsearch {

/// Symmetric equilibrium trust together with the state of the bisection that
/// produced it.
struct EquilibriumSolution {
  double q_bar = 0.0;
  // q_bar - p, solved for directly so it keeps full relative precision even
  // when it is far below the resolution of q_bar (large n).
  double premium = 0.0;
  // ln(q_bar - p); finite even after `premium` underflows to 0.
  double log_premium = 0.0;
  double residual = 0.0;    // |reliability_for_trust(q_bar) - p|
  double e_residual = 0.0;  // |equilibrium_residual(q_bar)|
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// Raised when the bisection cannot produce a solution. `bracket_lo` and
/// `bracket_hi` hold the best bracket reached.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}

  double bracket_lo;
  double bracket_hi;
};

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

struct CurveSamples {
  std::string abscissa_name;
  std::string ordinate_name;
  std::vector<CurvePoint> points;
};

inline constexpr double kBracketMargin = 1e-9;

/// Bisection on q -> reliability_for_trust(n, k, q) - p over
/// [1/(k+1) + 1e-9, 1 - 1e-9]. That map is strictly increasing, so the root
/// is unique and the spurious zero of the residual at q = 1 is never seen.
///
/// A second bisection, geometric in the premium d = q_bar - p, refines the
/// root to relative precision 1e-12 in d; q_bar is then reported as p + d.
/// `iterations` counts both stages; the bracket is the first stage's.
EquilibriumSolution solve_equilibrium(const GameParams& params, double q_tol = 1e-12,
                                      int max_iter = 200);

/// `steps` uniformly spaced samples of (q, E(q)) on [q_lo, q_hi], endpoints
/// included.
CurveSamples sample_residual_curve(const GameParams& params, double q_lo, double q_hi,
                                   int steps);

/// `steps` uniformly spaced samples of (q, F(q)) on [q_lo, q_hi], which must
/// sit inside (1/(k+1), 1).
CurveSamples sample_reliability_curve(int n, int k, double q_lo, double q_hi, int steps);

/// Equilibrium trust for each n in `n_values` (strictly increasing).
CurveSamples sweep_in_n(int k, double p, const std::vector<int>& n_values);

/// Equilibrium trust for each k in `k_values` (strictly increasing). Every
/// k must keep p above 1/(k+1).
CurveSamples sweep_in_k(int n, double p, const std::vector<int>& k_values);

}  // namespace compsearch
