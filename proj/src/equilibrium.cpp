#include "compsearch/equilibrium.hpp"

#include <cmath>
#include <limits>

namespace compsearch {

namespace {

std::vector<double> uniform_grid(double lo, double hi, int steps) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double width = hi - lo;
  for (int i = 0; i < steps; ++i) grid[i] = lo + width * i / (steps - 1);
  grid.back() = hi;
  return grid;
}

template <typename Int>
void require_strictly_increasing(const std::vector<Int>& values, const char* name) {
  if (values.empty()) throw std::domain_error(std::string(name) + " list is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw std::domain_error(std::string(name) + " values must be strictly increasing");
    }
  }
}

// Sign of reliability_for_trust(p + d) - p, scaled by its (positive)
// denominator. Written as d*B - q(1-p)*G with B = f(q*, q) and
// G = f(q*, q) - f(q, q*) expanded into terms that carry no cancellation when
// the premium d is tiny, where f(a, b) = (1-(1-a)^n)(1-(1-b)^(n-1)).
double premium_excess(int n, int k, double p, double d) {
  const double q = p + d;
  const double q_star = (1.0 - q) / k;
  const double x_pow = survival_power(q, n - 1);
  const double y_pow = survival_power(q_star, n - 1);
  const double gap = y_pow * q_star - x_pow * q + x_pow * y_pow * (q - q_star);
  const double toward_decoys = hit_probability(q_star, n) * hit_probability(q, n - 1);
  return d * toward_decoys - q * (1.0 - p) * gap;
}

// ln of the premium once it is below the smallest normal double. There q
// rounds to p, so d*B(p) = p(1-p)*G(p) holds to rounding; G is factored as
// (1-p*)^(n-1) times a bracket of order p* to stay in range.
double log_premium_at_underflow(int n, int k, double p) {
  const double p_star = (1.0 - p) / k;
  const double log_x = (n - 1) * std::log1p(-p);
  const double log_y = (n - 1) * std::log1p(-p_star);
  const double bracket = p_star - p * std::exp(log_x - log_y) + (p - p_star) * std::exp(log_x);
  const double toward_decoys = hit_probability(p_star, n) * hit_probability(p, n - 1);
  return std::log(p * (1.0 - p)) + log_y + std::log(bracket) - std::log(toward_decoys);
}

constexpr int kPremiumMaxSteps = 2200;
constexpr double kPremiumRelTol = 1e-12;

struct PremiumResult {
  double premium = 0.0;
  int steps = 0;
};

// Refines d = q_bar - p inside the first-stage bracket. d > 0 for every valid
// instance; 0 is returned only if d underflows.
PremiumResult solve_premium(const GameParams& params, double lo, double hi) {
  const auto excess = [&](double d) { return premium_excess(params.n, params.k, params.p, d); };
  PremiumResult result;
  double d_hi = hi - params.p;
  if (!(d_hi > 0.0)) d_hi = std::numeric_limits<double>::min();
  while (excess(d_hi) <= 0.0 && result.steps < kPremiumMaxSteps) {
    d_hi *= 2.0;
    ++result.steps;
  }
  double d_lo = lo - params.p;
  if (!(d_lo > 0.0) || excess(d_lo) >= 0.0) {
    d_lo = 0.5 * d_hi;
    while (d_lo > 0.0 && excess(d_lo) >= 0.0 && result.steps < kPremiumMaxSteps) {
      d_hi = d_lo;
      d_lo *= 0.5;
      ++result.steps;
    }
    if (!(d_lo > 0.0)) return result;
  }
  while (d_hi - d_lo > kPremiumRelTol * d_hi && result.steps < kPremiumMaxSteps) {
    const double mid =
        d_hi > 4.0 * d_lo ? std::sqrt(d_lo) * std::sqrt(d_hi) : 0.5 * (d_lo + d_hi);
    if (mid <= d_lo || mid >= d_hi) break;
    if (excess(mid) < 0.0) {
      d_lo = mid;
    } else {
      d_hi = mid;
    }
    ++result.steps;
  }
  result.premium = 0.5 * (d_lo + d_hi);
  return result;
}

}  // namespace

EquilibriumSolution solve_equilibrium(const GameParams& params, double q_tol, int max_iter) {
  params.validate();
  if (!(q_tol >= 0.0)) throw std::domain_error("q tolerance must be non-negative");
  if (max_iter < 1) throw std::domain_error("max_iter must be at least 1");

  const auto excess = [&](double q) {
    return reliability_for_trust(params.n, params.k, q) - params.p;
  };

  double lo = 1.0 / (params.k + 1) + kBracketMargin;
  double hi = 1.0 - kBracketMargin;
  if (excess(lo) >= 0.0 || excess(hi) <= 0.0) {
    throw SolverError("equilibrium bracket does not straddle p; parameters escaped validation",
                      lo, hi);
  }

  int iterations = 0;
  while (hi - lo > q_tol && iterations < max_iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    if (excess(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  if (hi - lo > q_tol && 0.5 * (lo + hi) > lo && 0.5 * (lo + hi) < hi) {
    throw SolverError("bisection did not reach the requested tolerance", lo, hi);
  }

  const auto refined = solve_premium(params, lo, hi);

  EquilibriumSolution solution;
  solution.premium = refined.premium;
  solution.log_premium = refined.premium >= std::numeric_limits<double>::min()
                             ? std::log(refined.premium)
                             : log_premium_at_underflow(params.n, params.k, params.p);
  solution.q_bar = params.p + refined.premium;
  solution.residual = std::abs(excess(solution.q_bar));
  solution.e_residual = std::abs(equilibrium_residual(params, solution.q_bar));
  solution.iterations = iterations + refined.steps;
  solution.bracket_lo = lo;
  solution.bracket_hi = hi;
  return solution;
}

CurveSamples sample_residual_curve(const GameParams& params, double q_lo, double q_hi,
                                   int steps) {
  params.validate();
  if (!(q_lo >= 0.0 && q_lo < q_hi && q_hi <= 1.0)) {
    throw std::domain_error("need 0 <= q_lo < q_hi <= 1");
  }
  if (steps < 2) throw std::domain_error("steps must be at least 2");
  CurveSamples curve{"q", "E", {}};
  curve.points.reserve(static_cast<std::size_t>(steps));
  for (double q : uniform_grid(q_lo, q_hi, steps)) {
    curve.points.push_back({q, equilibrium_residual(params, q)});
  }
  return curve;
}

CurveSamples sample_reliability_curve(int n, int k, double q_lo, double q_hi, int steps) {
  if (n < 2) throw std::domain_error("n must be at least 2");
  if (k < 1) throw std::domain_error("k must be at least 1");
  if (!(q_lo > 1.0 / (k + 1) && q_lo < q_hi && q_hi < 1.0)) {
    throw std::domain_error("need 1/(k+1) < q_lo < q_hi < 1");
  }
  if (steps < 2) throw std::domain_error("steps must be at least 2");
  CurveSamples curve{"q", "F", {}};
  curve.points.reserve(static_cast<std::size_t>(steps));
  for (double q : uniform_grid(q_lo, q_hi, steps)) {
    curve.points.push_back({q, reliability_for_trust(n, k, q)});
  }
  return curve;
}

CurveSamples sweep_in_n(int k, double p, const std::vector<int>& n_values) {
  require_strictly_increasing(n_values, "n");
  CurveSamples curve{"n", "q_bar", {}};
  curve.points.reserve(n_values.size());
  for (int n : n_values) {
    const auto solution = solve_equilibrium(GameParams::make(n, k, p));
    curve.points.push_back({static_cast<double>(n), solution.q_bar});
  }
  return curve;
}

CurveSamples sweep_in_k(int n, double p, const std::vector<int>& k_values) {
  require_strictly_increasing(k_values, "k");
  CurveSamples curve{"k", "q_bar", {}};
  curve.points.reserve(k_values.size());
  for (int k : k_values) {
    const auto solution = solve_equilibrium(GameParams::make(n, k, p));
    curve.points.push_back({static_cast<double>(k), solution.q_bar});
  }
  return curve;
}

}  // namespace compsearch
