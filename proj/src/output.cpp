#include "compsearch/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace compsearch::output {

namespace {

std::string json_escape(const std::string& text) {
  std::string escaped;
  escaped.reserve(text.size() + 2);
  escaped += '"';
  for (char c : text) {
    switch (c) {
      case '"': escaped += "\\\""; break;
      case '\\': escaped += "\\\\"; break;
      case '\n': escaped += "\\n"; break;
      default: escaped += c;
    }
  }
  escaped += '"';
  return escaped;
}

struct Renderer {
  bool json;

  std::string operator()(double v) const {
    if (!std::isfinite(v)) return json ? "null" : format_real(v);
    return format_real(v);
  }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(std::uint64_t v) const { return std::to_string(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::string& v) const { return json ? json_escape(v) : v; }
  std::string operator()(std::nullptr_t) const { return json ? "null" : ""; }
};

}  // namespace

std::string format_real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

Record& Record::add(std::string key, double value) {
  fields_.emplace_back(std::move(key), value);
  return *this;
}
Record& Record::add(std::string key, int value) {
  fields_.emplace_back(std::move(key), static_cast<std::int64_t>(value));
  return *this;
}
Record& Record::add(std::string key, long value) {
  fields_.emplace_back(std::move(key), static_cast<std::int64_t>(value));
  return *this;
}
Record& Record::add(std::string key, std::uint64_t value) {
  fields_.emplace_back(std::move(key), value);
  return *this;
}
Record& Record::add(std::string key, bool value) {
  fields_.emplace_back(std::move(key), value);
  return *this;
}
Record& Record::add(std::string key, std::string value) {
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}
Record& Record::add_null(std::string key) {
  fields_.emplace_back(std::move(key), nullptr);
  return *this;
}

std::string Record::to_json() const {
  std::string text = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i > 0) text += ',';
    text += json_escape(fields_[i].first);
    text += ':';
    text += std::visit(Renderer{true}, fields_[i].second);
  }
  text += '}';
  return text;
}

void Record::write(std::ostream& out, Format format) const {
  if (format == Format::kJson) {
    out << to_json() << '\n';
    return;
  }
  for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].first;
  out << '\n';
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    out << (i ? "," : "") << std::visit(Renderer{false}, fields_[i].second);
  }
  out << '\n';
}

Record solution_record(const GameParams& params, const EquilibriumSolution& solution) {
  Record record;
  record.add("n", params.n)
      .add("k", params.k)
      .add("p", params.p)
      .add("q_bar", solution.q_bar)
      .add("premium", solution.premium)
      .add("log_premium", solution.log_premium)
      .add("residual", solution.residual)
      .add("e_residual", solution.e_residual)
      .add("iterations", solution.iterations)
      .add("bracket_lo", solution.bracket_lo)
      .add("bracket_hi", solution.bracket_hi);
  return record;
}

Record simulation_record(const SimulationConfig& config, const SimulationReport& report) {
  Record record;
  record.add("n", config.params.n)
      .add("k", config.params.k)
      .add("p", config.params.p)
      .add("q", config.profile.q)
      .add("r", config.profile.r)
      .add("rounds", config.rounds)
      .add("max_turns", config.max_turns)
      .add("rounds_completed", report.rounds_completed)
      .add("capped_rounds", report.capped_rounds)
      .add("biased_low", report.biased_low())
      .add("focal_mean_payoff", report.focal_mean_payoff)
      .add("focal_std_error", report.focal_std_error)
      .add("mean_finish_turn", report.mean_finish_turn)
      .add("finish_turn_std_error", report.finish_turn_std_error)
      .add("seed_echo", report.seed_echo);
  if (config.profile.q > 0.0 && config.profile.q < 1.0) {
    record.add("closed_form_payoff", focal_payoff(config.params, config.profile));
  } else {
    record.add_null("closed_form_payoff");
  }
  return record;
}

void write_curve(std::ostream& out, const CurveSamples& curve, bool integer_abscissa) {
  out << curve.abscissa_name << ',' << curve.ordinate_name << '\n';
  for (const auto& point : curve.points) {
    if (integer_abscissa) {
      out << static_cast<long long>(point.x);
    } else {
      out << format_real(point.x);
    }
    out << ',' << format_real(point.y) << '\n';
  }
}

void write_scan(std::ostream& out, const BestResponseScan& scan) {
  out << "r,payoff\n";
  for (const auto& point : scan.grid) {
    out << format_real(point.x) << ',' << format_real(point.y) << '\n';
  }
  out << "# argmax_r=" << format_real(scan.argmax_r)
      << " max_payoff=" << format_real(scan.max_payoff) << '\n';
}

}  // namespace compsearch::output
