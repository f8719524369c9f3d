#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace compsearch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidParameters = 2;

/// Dispatches one subcommand. `args` excludes the program name. Data goes to
/// `out`, diagnostics to `err`; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Integers from `from` to `to` spaced evenly in log10 with `per_decade`
/// points per decade, rounded, deduplicated, both ends included.
std::vector<int> log_spaced(int from, int to, int per_decade);

}  // namespace compsearch::cli
