#include "compsearch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "compsearch/acceptance.hpp"
#include "compsearch/equilibrium.hpp"
#include "compsearch/model.hpp"
#include "compsearch/output.hpp"
#include "compsearch/simulator.hpp"
#include "compsearch/verifier.hpp"

namespace compsearch::cli {

namespace {

const std::map<std::string, output::Format> kFormats = {{"csv", output::Format::kCsv},
                                                         {"json", output::Format::kJson}};

struct Options {
  int n = 0;
  int k = 0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double tol = 1e-12;
  int max_iter = 200;
  double q_min = 0.0;
  double q_max = 0.0;
  int steps = 0;
  int n_from = 0;
  int n_to = 0;
  int k_from = 0;
  int k_to = 0;
  bool log_scale = false;
  int per_decade = 10;
  long rounds = 0;
  std::uint64_t seed = 0;
  long max_turns = 1000000;
  unsigned threads = 0;
  bool quick = false;
  std::string format = "json";
};

std::vector<int> inclusive_range(int from, int to) {
  if (from > to) throw std::domain_error("range start must not exceed range end");
  std::vector<int> values;
  for (int v = from; v <= to; ++v) values.push_back(v);
  return values;
}

}  // namespace

std::vector<int> log_spaced(int from, int to, int per_decade) {
  if (from < 1 || from > to) throw std::domain_error("log spacing needs 1 <= from <= to");
  if (per_decade < 1) throw std::domain_error("per-decade must be at least 1");
  std::vector<int> values{from};
  const double decades = std::log10(static_cast<double>(to) / from);
  const int steps = static_cast<int>(std::ceil(decades * per_decade));
  for (int i = 1; i <= steps; ++i) {
    const double v = from * std::pow(10.0, static_cast<double>(i) / per_decade);
    const int rounded = std::min(to, static_cast<int>(std::lround(v)));
    if (rounded > values.back()) values.push_back(rounded);
  }
  if (values.back() != to) values.push_back(to);
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium trust in a competitive search race with a faulty pointer"};
  app.name("compsearch");
  app.require_subcommand(1);
  Options o;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Symmetric equilibrium trust, e.g. --n 5 --k 3 --p 0.5");
  solve->add_option("--n", o.n, "Number of searchers (>= 2)")->required();
  solve->add_option("--k", o.k, "Number of rays not leading to the treasure (>= 1)")->required();
  solve->add_option("--p", o.p, "Pointer reliability, 1/(k+1) < p < 1")->required();
  solve->add_option("--tol", o.tol, "Bisection tolerance on q")->capture_default_str();
  solve->add_option("--max-iter", o.max_iter, "Bisection step limit")->capture_default_str();
  add_format(solve);

  auto* curve_e = app.add_subcommand("curve-e", "Sample the equilibrium residual E(q) as CSV q,E");
  curve_e->add_option("--n", o.n)->required();
  curve_e->add_option("--k", o.k)->required();
  curve_e->add_option("--p", o.p)->required();
  curve_e->add_option("--q-min", o.q_min)->required();
  curve_e->add_option("--q-max", o.q_max)->required();
  curve_e->add_option("--steps", o.steps, "Number of grid points")->required();

  auto* curve_f =
      app.add_subcommand("curve-f", "Sample the reliability map p = F(q) as CSV q,F");
  curve_f->add_option("--n", o.n)->required();
  curve_f->add_option("--k", o.k)->required();
  curve_f->add_option("--q-min", o.q_min)->required();
  curve_f->add_option("--q-max", o.q_max)->required();
  curve_f->add_option("--steps", o.steps, "Number of grid points")->required();

  auto* sweep_n_cmd = app.add_subcommand("sweep-n", "Equilibrium trust over n as CSV n,q_bar");
  sweep_n_cmd->add_option("--k", o.k)->required();
  sweep_n_cmd->add_option("--p", o.p)->required();
  sweep_n_cmd->add_option("--n-from", o.n_from)->required();
  sweep_n_cmd->add_option("--n-to", o.n_to)->required();
  sweep_n_cmd->add_flag("--log", o.log_scale, "Log-spaced n instead of every integer");
  sweep_n_cmd->add_option("--per-decade", o.per_decade, "Points per decade with --log")
      ->capture_default_str();

  auto* sweep_k_cmd = app.add_subcommand("sweep-k", "Equilibrium trust over k as CSV k,q_bar");
  sweep_k_cmd->add_option("--n", o.n)->required();
  sweep_k_cmd->add_option("--p", o.p)->required();
  sweep_k_cmd->add_option("--k-from", o.k_from)->required();
  sweep_k_cmd->add_option("--k-to", o.k_to)->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the focal payoff (JSON)");
  simulate->add_option("--n", o.n)->required();
  simulate->add_option("--k", o.k)->required();
  simulate->add_option("--p", o.p)->required();
  simulate->add_option("--q", o.q, "Trust of the other searchers")->required();
  auto* r_opt = simulate->add_option("--r", o.r, "Trust of the focal searcher (defaults to q)");
  simulate->add_option("--rounds", o.rounds)->required();
  simulate->add_option("--seed", o.seed)->required();
  simulate->add_option("--max-turns", o.max_turns)->capture_default_str();
  simulate->add_option("--threads", o.threads, "Worker threads, 0 = all cores (output unaffected)")
      ->capture_default_str();

  auto* best_response =
      app.add_subcommand("best-response", "Focal payoff over r as CSV r,payoff plus the argmax");
  best_response->add_option("--n", o.n)->required();
  best_response->add_option("--k", o.k)->required();
  best_response->add_option("--p", o.p)->required();
  best_response->add_option("--q", o.q)->required();
  o.steps = 2001;
  best_response->add_option("--steps", o.steps)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the release checks; exit 0 iff all pass");
  verify->add_flag("--quick", o.quick, "Monte Carlo checks with 1e5 instead of 1e6 rounds");
  verify->add_option("--threads", o.threads)->capture_default_str();

  auto* single = app.add_subcommand("single-searcher", "Optimal trust of a lone searcher");
  single->add_option("--p", o.p)->required();
  single->add_option("--k", o.k)->required();
  add_format(single);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInvalidParameters;
  }

  const auto format = kFormats.at(o.format);
  try {
    if (solve->parsed()) {
      const auto params = GameParams::make(o.n, o.k, o.p);
      output::solution_record(params, solve_equilibrium(params, o.tol, o.max_iter)).write(out, format);
    } else if (curve_e->parsed()) {
      const auto params = GameParams::make(o.n, o.k, o.p);
      output::write_curve(out, sample_residual_curve(params, o.q_min, o.q_max, o.steps));
    } else if (curve_f->parsed()) {
      output::write_curve(out, sample_reliability_curve(o.n, o.k, o.q_min, o.q_max, o.steps));
    } else if (sweep_n_cmd->parsed()) {
      const auto ns = o.log_scale ? log_spaced(o.n_from, o.n_to, o.per_decade)
                                  : inclusive_range(o.n_from, o.n_to);
      output::write_curve(out, sweep_in_n(o.k, o.p, ns), true);
    } else if (sweep_k_cmd->parsed()) {
      output::write_curve(out, sweep_in_k(o.n, o.p, inclusive_range(o.k_from, o.k_to)), true);
    } else if (simulate->parsed()) {
      SimulationConfig config{GameParams::make(o.n, o.k, o.p),
                              {o.q, r_opt->count() > 0 ? o.r : o.q},
                              o.rounds,
                              o.seed,
                              o.max_turns};
      config.validate();
      const auto report = estimate_payoff(config, o.threads);
      if (report.biased_low()) {
        err << "warning: " << report.capped_rounds
            << " rounds hit --max-turns; the payoff estimate is biased low\n";
      }
      output::simulation_record(config, report).write(out, output::Format::kJson);
    } else if (best_response->parsed()) {
      output::write_scan(out, best_response_scan(GameParams::make(o.n, o.k, o.p), o.q, o.steps));
    } else if (verify->parsed()) {
      const auto results = acceptance::run_suite({o.quick, o.threads});
      acceptance::print_results(out, results);
      return acceptance::all_passed(results) ? kExitOk : kExitVerificationFailed;
    } else if (single->parsed()) {
      output::Record record;
      record.add("p", o.p).add("k", o.k).add("q", single_searcher_trust(o.p, o.k));
      record.write(out, format);
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (bracket " << output::format_real(e.bracket_lo) << ", "
        << output::format_real(e.bracket_hi) << ")\n";
    return kExitVerificationFailed;
  } catch (const std::logic_error& e) {
    // InvalidParameter and std::domain_error both derive from logic_error.
    err << "error: " << e.what() << '\n';
    return kExitInvalidParameters;
  }
  return kExitOk;
}

}  // namespace compsearch::cli
