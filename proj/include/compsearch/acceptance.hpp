#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace compsearch::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  /// Cuts every Monte Carlo run to 1e5 rounds. Statistical tolerances stay
  /// the same; only the power of the check drops.
  bool quick = false;
  unsigned threads = 0;
};

/// Runs every release criterion in order. Each criterion is independent, so
/// a failure in one does not stop the others.
std::vector<CriterionResult> run_suite(const SuiteOptions& options = {});

/// One `[PASS]`/`[FAIL]` line per criterion and a closing summary.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace compsearch::acceptance
