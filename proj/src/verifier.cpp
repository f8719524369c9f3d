#include "compsearch/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace compsearch {

BestResponseScan best_response_scan(const GameParams& params, double q, int r_steps,
                                    double tie_rel_tol) {
  params.validate();
  if (r_steps < 2) throw std::domain_error("r_steps must be at least 2");
  if (!(tie_rel_tol >= 0.0)) throw std::domain_error("tie tolerance must be non-negative");

  BestResponseScan scan;
  scan.q_fixed = q;
  scan.grid.reserve(static_cast<std::size_t>(r_steps));
  for (int i = 0; i < r_steps; ++i) {
    const double r = i == r_steps - 1 ? 1.0 : static_cast<double>(i) / (r_steps - 1);
    scan.grid.push_back({r, focal_payoff(params, {q, r})});
  }

  const double best =
      std::max_element(scan.grid.begin(), scan.grid.end(), [](const auto& a, const auto& b) {
        return a.y < b.y;
      })->y;
  const double floor = best - tie_rel_tol * std::abs(best);
  bool found = false;
  for (const auto& point : scan.grid) {
    if (point.y < floor) continue;
    ++scan.tied_points;
    if (!found || std::abs(point.x - q) < std::abs(scan.argmax_r - q)) {
      scan.argmax_r = point.x;
      found = true;
    }
  }
  scan.max_payoff = best;
  return scan;
}

EquilibriumCheck check_equilibrium(const GameParams& params, double q_tol, double payoff_tol,
                                   int r_steps, double e_tol) {
  EquilibriumCheck check;
  check.solution = solve_equilibrium(params, q_tol);
  check.scan = best_response_scan(params, check.solution.q_bar, r_steps);
  check.grid_step = 1.0 / (r_steps - 1);
  check.max_gain = check.scan.max_payoff - 1.0 / params.n;
  check.argmax_at_q_bar =
      std::abs(check.scan.argmax_r - check.solution.q_bar) <= check.grid_step * (1.0 + 1e-9);
  check.no_profitable_deviation = check.max_gain <= payoff_tol;
  check.residual_vanishes = check.solution.e_residual <= e_tol;
  return check;
}

MatchingReport check_probability_matching(int k, double p, const std::vector<int>& n_list,
                                          const std::function<double(int)>& tolerance) {
  MatchingReport report;
  report.k = k;
  report.p = p;
  report.threshold = decrease_threshold(p, k);

  if (n_list.empty()) throw std::domain_error("n list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw std::domain_error("n values must be strictly increasing");
    }
    const auto solution = solve_equilibrium(GameParams::make(n_list[i], k, p));
    report.entries.push_back({n_list[i], solution.q_bar, solution.premium, solution.log_premium});
  }

  report.all_positive = true;
  for (const auto& entry : report.entries) {
    if (!(entry.q_bar >= p && std::isfinite(entry.log_gap))) {
      report.all_positive = false;
      std::ostringstream msg;
      msg << "q_bar does not exceed p at n=" << entry.n << " (log gap " << entry.log_gap << ")";
      report.failures.push_back(msg.str());
    }
  }

  report.decreasing_above_threshold = true;
  for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
    const auto& here = report.entries[i];
    const auto& next = report.entries[i + 1];
    if (here.n <= report.threshold) continue;
    if (!(next.log_gap < here.log_gap)) {
      report.decreasing_above_threshold = false;
      std::ostringstream msg;
      msg << "gap did not shrink from n=" << here.n << " to n=" << next.n;
      report.failures.push_back(msg.str());
    }
  }

  const auto& last = report.entries.back();
  report.final_gap_tolerance = tolerance(last.n);
  report.final_gap_ok = std::abs(last.gap) < report.final_gap_tolerance;
  if (!report.final_gap_ok) {
    std::ostringstream msg;
    msg << "final gap " << last.gap << " at n=" << last.n << " exceeds "
        << report.final_gap_tolerance;
    report.failures.push_back(msg.str());
  }
  return report;
}

}  // namespace compsearch
