#include "compsearch/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "compsearch/cli.hpp"
#include "compsearch/equilibrium.hpp"
#include "compsearch/model.hpp"
#include "compsearch/rng.hpp"
#include "compsearch/simulator.hpp"
#include "compsearch/verifier.hpp"

namespace compsearch::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Deterministic draws for the randomised parameter grids.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_.below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform on the open interval (lo, hi).
  double open(double lo, double hi) {
    double u;
    do u = rng_.uniform(); while (u == 0.0);
    return lo + (hi - lo) * u;
  }

  GameParams params(int n_max, int k_max, int n_min = 2) {
    const int n = integer(n_min, n_max);
    const int k = integer(1, k_max);
    return GameParams::make(n, k, open(1.0 / (k + 1), 1.0));
  }

 private:
  SplitMix64 rng_;
};

std::string fmt(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

CriterionResult figure_one_roots() {
  CriterionResult result{1, "equilibrium roots for n=5, k=3", true, "", 0};
  const double ps[] = {0.5, 2.0 / 3.0, 0.75};
  const double expected[] = {0.53, 0.70, 0.78};
  std::ostringstream detail;
  for (int i = 0; i < 3; ++i) {
    const auto start = Clock::now();
    const auto solution = solve_equilibrium(GameParams::make(5, 3, ps[i]));
    const double elapsed = seconds_since(start);
    const bool ok = std::abs(solution.q_bar - expected[i]) <= 0.005 && elapsed < 1e-3;
    result.passed = result.passed && ok;
    detail << "p=" << fmt(ps[i]) << " q_bar=" << fmt(solution.q_bar) << " (" << fmt(elapsed * 1e6)
           << " us) ";
  }
  result.detail = detail.str();
  return result;
}

CriterionResult symmetric_payoff_identity() {
  CriterionResult result{2, "symmetric profile pays 1/n", true, "", 0};
  Sampler sampler(0x5eed0002);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto params = sampler.params(100, 10);
    const double q = sampler.open(0.0, 1.0);
    worst = std::max(worst, std::abs(focal_payoff(params, {q, q}) - 1.0 / params.n));
  }
  result.passed = worst <= 1e-12;
  result.detail = "500 tuples, max |R(q,q) - 1/n| = " + fmt(worst);
  return result;
}

CriterionResult trust_exceeds_reliability() {
  CriterionResult result{3, "equilibrium trust exceeds reliability", true, "", 0};
  Sampler sampler(0x5eed0003);
  int violations = 0;
  double smallest_gap = 1.0;
  constexpr int kTriples = 400;
  for (int i = 0; i < kTriples; ++i) {
    const auto params = sampler.params(100, 10);
    // q_bar - p can sit below the resolution of q_bar itself (e.g. k=1 at
    // n near 100), so the separately solved premium carries the sign.
    const auto solution = solve_equilibrium(params);
    smallest_gap = std::min(smallest_gap, solution.premium);
    if (!(solution.premium > 0.0 && solution.q_bar >= params.p &&
          solution.q_bar > 1.0 / (params.k + 1))) {
      ++violations;
    }
  }
  result.passed = violations == 0;
  result.detail = std::to_string(kTriples) + " triples, " + std::to_string(violations) +
                  " violations, smallest gap " + fmt(smallest_gap);
  return result;
}

CriterionResult eventually_decreasing_in_n() {
  CriterionResult result{4, "trust eventually decreases in n and tends to p", true, "", 0};
  const auto start = Clock::now();
  const std::pair<int, double> cases[] = {{1, 0.9}, {3, 0.5}, {10, 0.75}};
  std::ostringstream detail;
  for (const auto& [k, p] : cases) {
    const int first = static_cast<int>(std::ceil(decrease_threshold(p, k))) + 1;
    std::vector<int> ns;
    for (int n = first; n <= first + 49; ++n) ns.push_back(n);
    const auto curve = sweep_in_n(k, p, ns);
    bool decreasing = true;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      decreasing = decreasing && curve.points[i].y < curve.points[i - 1].y;
    }
    const double far_gap = std::abs(solve_equilibrium(GameParams::make(100000, k, p)).q_bar - p);
    result.passed = result.passed && decreasing && far_gap < 1e-3;
    detail << "(k=" << k << ",p=" << p << ") n=" << first << ".." << first + 49
           << (decreasing ? " decreasing" : " NOT decreasing") << ", |q_bar(1e5)-p|="
           << fmt(far_gap) << "; ";
  }
  result.seconds = seconds_since(start);
  result.passed = result.passed && result.seconds < 10.0;
  result.detail = detail.str();
  return result;
}

CriterionResult increasing_in_k() {
  CriterionResult result{5, "trust increases in k", true, "", 0};
  const std::pair<int, double> cases[] = {{5, 0.6}, {20, 0.51}};
  std::ostringstream detail;
  for (const auto& [n, p] : cases) {
    std::vector<int> ks;
    for (int k = 1; k <= 10; ++k) ks.push_back(k);
    const auto curve = sweep_in_k(n, p, ks);
    bool increasing = true;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      increasing = increasing && curve.points[i].y > curve.points[i - 1].y;
    }
    result.passed = result.passed && increasing;
    detail << "(n=" << n << ",p=" << p << ") q_bar " << fmt(curve.points.front().y) << " -> "
           << fmt(curve.points.back().y) << (increasing ? " increasing" : " NOT increasing")
           << "; ";
  }
  result.detail = detail.str();
  return result;
}

CriterionResult oracle_triangle(const SuiteOptions& options) {
  CriterionResult result{6, "closed form vs series oracle vs Monte Carlo", true, "", 0};
  const auto start = Clock::now();
  const long rounds = options.quick ? 100000 : 1000000;
  Sampler sampler(0x5eed0006);
  double worst_series = 0.0;
  double worst_z = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto params = sampler.params(10, 5);
    const TrustProfile profile{sampler.open(0.05, 0.95), sampler.open(0.0, 1.0)};
    const double closed = focal_payoff(params, profile);
    worst_series = std::max(worst_series, std::abs(series_payoff(params, profile) - closed));
    const auto report =
        estimate_payoff({params, profile, rounds, 6000u + static_cast<unsigned>(i)}, options.threads);
    const double z = std::abs(report.focal_mean_payoff - closed) / report.focal_std_error;
    worst_z = std::max(worst_z, z);
    result.passed = result.passed && report.capped_rounds == 0;
  }
  result.seconds = seconds_since(start);
  result.passed = result.passed && worst_series < 1e-10 && worst_z < 4.0 && result.seconds < 60.0;
  result.detail = "50 tuples, " + std::to_string(rounds) + " rounds each, max series error " +
                  fmt(worst_series) + ", max |z| " + fmt(worst_z);
  return result;
}

CriterionResult equilibrium_verification(const SuiteOptions& options) {
  CriterionResult result{7, "equilibria admit no profitable deviation", true, "", 0};
  const long rounds = options.quick ? 100000 : 1000000;
  const std::tuple<int, int, double> cases[] = {
      {5, 3, 0.5}, {5, 3, 2.0 / 3.0}, {5, 3, 0.75}, {2, 1, 2.0 / 3.0}};
  std::ostringstream detail;
  std::uint64_t seed = 7000;
  for (const auto& [n, k, p] : cases) {
    const auto params = GameParams::make(n, k, p);
    const auto check = check_equilibrium(params, 1e-12, 1e-9);
    const double q_bar = check.solution.q_bar;
    const auto report =
        estimate_payoff({params, TrustProfile::symmetric(q_bar), rounds, seed++}, options.threads);
    const double z = std::abs(report.focal_mean_payoff - 1.0 / n) / report.focal_std_error;
    const bool ok = check.passed() && z <= 3.0;
    result.passed = result.passed && ok;
    detail << "(" << n << "," << k << "," << fmt(p) << ") q_bar=" << fmt(q_bar)
           << " gain=" << fmt(check.max_gain) << " z=" << fmt(z) << (ok ? "" : " FAIL") << "; ";
  }
  result.detail = detail.str();
  return result;
}

CriterionResult large_population_trichotomy() {
  CriterionResult result{8, "large-n best response: 0 above p, 1 below, q at p", true, "", 0};
  const auto params = GameParams::make(1000, 3, 0.5);
  const auto above = best_response_scan(params, 0.6);
  const auto below = best_response_scan(params, 0.4);
  const auto matched = best_response_scan(params, 0.5);
  const double step = 1.0 / 2000;
  result.passed = above.argmax_r == 0.0 && below.argmax_r == 1.0 &&
                  std::abs(matched.argmax_r - 0.5) <= step;
  result.detail = "argmax r: q=0.6 -> " + fmt(above.argmax_r) + ", q=0.4 -> " +
                  fmt(below.argmax_r) + ", q=0.5 -> " + fmt(matched.argmax_r);
  return result;
}

CriterionResult unique_sign_change() {
  CriterionResult result{9, "residual has exactly one interior sign change", true, "", 0};
  Sampler sampler(0x5eed0009);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto params = sampler.params(50, 10);
    const double lo = 1.0 / (params.k + 1) + 1e-6;
    const double hi = 1.0 - 1e-6;
    const auto curve = sample_residual_curve(params, lo, hi, 2000);
    const double spacing = (hi - lo) / 1999;
    int changes = 0;
    double crossing = 0.0;
    for (std::size_t j = 1; j < curve.points.size(); ++j) {
      const double a = curve.points[j - 1].y;
      const double b = curve.points[j].y;
      if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) {
        ++changes;
        crossing = curve.points[j].x;
      }
    }
    const double q_bar = solve_equilibrium(params).q_bar;
    if (changes != 1 || std::abs(crossing - q_bar) > spacing) ++failures;
  }
  result.passed = failures == 0;
  result.detail = "200 triples, " + std::to_string(failures) + " without a single crossing at q_bar";
  return result;
}

CriterionResult byte_identical_output() {
  CriterionResult result{10, "repeated invocations give identical bytes", true, "", 0};
  const std::vector<std::vector<std::string>> commands = {
      {"solve", "--n", "5", "--k", "3", "--p", "0.5"},
      {"solve", "--n", "7", "--k", "2", "--p", "0.45", "--format", "csv"},
      {"simulate", "--n", "2", "--k", "1", "--p", "0.6667", "--q", "0.7", "--rounds", "100000",
       "--seed", "42"},
  };
  for (const auto& args : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int code1 = cli::run(args, out1, err1);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "1"});
    const bool is_sim = args.front() == "simulate";
    const int code2 = cli::run(is_sim ? threaded : args, out2, err2);
    const bool same = code1 == 0 && code2 == 0 && out1.str() == out2.str() && !out1.str().empty();
    result.passed = result.passed && same;
    if (!same) result.detail += "mismatch for '" + args.front() + "'; ";
  }
  if (result.passed) result.detail = std::to_string(commands.size()) + " commands repeated";
  return result;
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  const std::vector<std::function<CriterionResult()>> criteria = {
      figure_one_roots,
      symmetric_payoff_identity,
      trust_exceeds_reliability,
      eventually_decreasing_in_n,
      increasing_in_k,
      [&] { return oracle_triangle(options); },
      [&] { return equilibrium_verification(options); },
      large_population_trichotomy,
      unique_sign_change,
      byte_identical_output,
  };
  std::vector<CriterionResult> results;
  int id = 1;
  for (const auto& criterion : criteria) {
    const auto start = Clock::now();
    CriterionResult result;
    try {
      result = criterion();
    } catch (const std::exception& e) {
      result = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    if (result.seconds == 0.0) result.seconds = seconds_since(start);
    results.push_back(std::move(result));
    ++id;
  }
  return results;
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
  int passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (" << fmt(r.seconds)
        << " s): " << r.detail << '\n';
    passed += r.passed;
  }
  out << passed << "/" << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return !results.empty();
}

}  // namespace compsearch::acceptance
