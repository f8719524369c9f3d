#pragma once

// CSV and JSON rendering for command output. Reals are printed with 17
// significant digits so every value parses back to the same double, and keys
// keep a fixed order so identical results give byte-identical text.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "compsearch/equilibrium.hpp"
#include "compsearch/simulator.hpp"
#include "compsearch/verifier.hpp"

namespace compsearch::output {

enum class Format { kCsv, kJson };

std::string format_real(double value);

/// Flat record with ordered fields, rendered as a one-line JSON object or a
/// two-line CSV (header, values).
class Record {
 public:
  using Value = std::variant<double, std::int64_t, std::uint64_t, bool, std::string, std::nullptr_t>;

  Record& add(std::string key, double value);
  Record& add(std::string key, int value);
  Record& add(std::string key, long value);
  Record& add(std::string key, std::uint64_t value);
  Record& add(std::string key, bool value);
  Record& add(std::string key, std::string value);
  Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
  Record& add_null(std::string key);

  void write(std::ostream& out, Format format) const;
  std::string to_json() const;

 private:
  std::vector<std::pair<std::string, Value>> fields_;
};

Record solution_record(const GameParams& params, const EquilibriumSolution& solution);
Record simulation_record(const SimulationConfig& config, const SimulationReport& report);

/// Header row `x_name,y_name` then one row per point. Integer abscissae
/// (n, k) are printed without a decimal point.
void write_curve(std::ostream& out, const CurveSamples& curve, bool integer_abscissa = false);

/// `r,payoff` rows followed by a `# argmax_r=... max_payoff=...` summary line.
void write_scan(std::ostream& out, const BestResponseScan& scan);

}  // namespace compsearch::output
