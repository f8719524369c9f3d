#include "compsearch/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace compsearch {

namespace {

constexpr long kBlockRounds = 1L << 14;

struct TurnResult {
  long finish_turn = 0;
  int arrivals = 0;
  bool capped = false;
};

// Plays turns until someone reaches H. `arrived` is caller-owned scratch of
// size n; on return it flags the searchers that arrived on the final turn.
TurnResult play(const GameParams& params, const TrustProfile& profile, bool pointer_correct,
                long max_turns, SplitMix64& rng, std::vector<unsigned char>& arrived) {
  const auto k = static_cast<std::uint64_t>(params.k);
  for (long turn = 1; turn <= max_turns; ++turn) {
    int arrivals = 0;
    for (int i = 0; i < params.n; ++i) {
      const double trust = i == 0 ? profile.r : profile.q;
      bool hit;
      if (rng.uniform() < trust) {
        hit = pointer_correct;
      } else {
        // Index 0 of the k non-pointed rays is H whenever the pointer is wrong.
        hit = !pointer_correct && rng.below(k) == 0;
      }
      arrived[i] = hit;
      arrivals += hit;
    }
    if (arrivals > 0) return {turn, arrivals, false};
  }
  return {max_turns, 0, true};
}

// Welford accumulator; merge() is Chan et al.'s pairwise update.
struct Moments {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const long total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * (static_cast<double>(count) * other.count / total);
    count = total;
  }

  double std_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / (count - 1) / count);
  }
};

struct BlockStats {
  Moments payoff;
  Moments finish;  // uncapped rounds only
  long capped = 0;

  void merge(const BlockStats& other) {
    payoff.merge(other.payoff);
    finish.merge(other.finish);
    capped += other.capped;
  }
};

BlockStats run_block(const SimulationConfig& config, long first, long last) {
  BlockStats stats;
  std::vector<unsigned char> arrived(static_cast<std::size_t>(config.params.n));
  for (long round = first; round < last; ++round) {
    auto rng = SplitMix64::stream(config.seed, static_cast<std::uint64_t>(round));
    const bool pointer_correct = rng.uniform() < config.params.p;
    const auto result =
        play(config.params, config.profile, pointer_correct, config.max_turns, rng, arrived);
    if (result.capped) {
      ++stats.capped;
      stats.payoff.add(0.0);
      continue;
    }
    stats.payoff.add(arrived[0] ? 1.0 / result.arrivals : 0.0);
    stats.finish.add(static_cast<double>(result.finish_turn));
  }
  return stats;
}

void validate_profile(const TrustProfile& profile) {
  if (!(profile.q >= 0.0 && profile.q <= 1.0)) throw std::domain_error("q must lie in [0,1]");
  if (!(profile.r >= 0.0 && profile.r <= 1.0)) throw std::domain_error("r must lie in [0,1]");
}

// Expected focal share on one turn, given that each other searcher arrives
// with probability `others` and the focal searcher with `own`: sum over the
// number m of co-arrivers of C(n-1,m) a^m (1-a)^(n-1-m) / (m+1).
double one_turn_share(int n, double others, double own) {
  double sum = 0.0;
  double binom = 1.0;
  for (int m = 0; m <= n - 1; ++m) {
    sum += binom * std::pow(others, m) * std::pow(1.0 - others, n - 1 - m) / (m + 1);
    binom = binom * (n - 1 - m) / (m + 1);
  }
  return own * sum;
}

double branch_series(int n, double others, double own, double tail_tol) {
  const double share = one_turn_share(n, others, own);
  if (share == 0.0) return 0.0;
  const double nobody = std::pow(1.0 - others, n - 1) * (1.0 - own);
  double total = 0.0;
  double term = share;
  while (true) {
    total += term;
    const double tail = term * nobody / (1.0 - nobody);
    if (!(tail >= tail_tol)) break;
    term *= nobody;
  }
  return total;
}

}  // namespace

void SimulationConfig::validate() const {
  params.validate();
  validate_profile(profile);
  if (rounds < 1) throw std::domain_error("rounds must be at least 1");
  if (max_turns < 1) throw std::domain_error("max_turns must be at least 1");
}

RoundOutcome simulate_round_with_pointer(const GameParams& params, const TrustProfile& profile,
                                         bool pointer_correct, SplitMix64& rng, long max_turns) {
  params.validate();
  validate_profile(profile);
  if (max_turns < 1) throw std::domain_error("max_turns must be at least 1");

  std::vector<unsigned char> arrived(static_cast<std::size_t>(params.n));
  const auto result = play(params, profile, pointer_correct, max_turns, rng, arrived);

  RoundOutcome outcome;
  outcome.payoffs.assign(arrived.size(), 0.0);
  outcome.finish_turn = result.finish_turn;
  outcome.arrivals = result.arrivals;
  outcome.pointer_correct = pointer_correct;
  outcome.capped = result.capped;
  if (!result.capped) {
    const double share = 1.0 / result.arrivals;
    for (std::size_t i = 0; i < arrived.size(); ++i) {
      if (arrived[i]) outcome.payoffs[i] = share;
    }
  }
  outcome.focal_payoff = outcome.payoffs[0];
  return outcome;
}

RoundOutcome simulate_round(const GameParams& params, const TrustProfile& profile,
                            SplitMix64& rng, long max_turns) {
  params.validate();
  const bool pointer_correct = rng.uniform() < params.p;
  return simulate_round_with_pointer(params, profile, pointer_correct, rng, max_turns);
}

SimulationReport estimate_payoff(const SimulationConfig& config, unsigned threads) {
  config.validate();
  const long blocks = (config.rounds + kBlockRounds - 1) / kBlockRounds;
  std::vector<BlockStats> results(static_cast<std::size_t>(blocks));

  std::atomic<long> next{0};
  const auto worker = [&] {
    for (long b = next++; b < blocks; b = next++) {
      const long first = b * kBlockRounds;
      results[b] = run_block(config, first, std::min(first + kBlockRounds, config.rounds));
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Pairwise reduction over blocks in index order.
  for (std::size_t width = 1; width < results.size(); width *= 2) {
    for (std::size_t i = 0; i + width < results.size(); i += 2 * width) {
      results[i].merge(results[i + width]);
    }
  }
  const BlockStats& total = results.front();

  SimulationReport report;
  report.rounds_completed = total.payoff.count;
  report.capped_rounds = total.capped;
  report.focal_mean_payoff = total.payoff.mean;
  report.focal_std_error = total.payoff.std_error();
  report.mean_finish_turn = total.finish.mean;
  report.finish_turn_std_error = total.finish.std_error();
  report.seed_echo = config.seed;
  return report;
}

double series_payoff(const GameParams& params, const TrustProfile& profile, double tail_tol) {
  params.validate();
  if (!(profile.q > 0.0 && profile.q < 1.0)) {
    throw std::domain_error("q must lie strictly between 0 and 1");
  }
  if (!(profile.r >= 0.0 && profile.r <= 1.0)) throw std::domain_error("r must lie in [0,1]");
  if (!(tail_tol > 0.0)) throw std::domain_error("tail tolerance must be positive");
  const double q_star = (1.0 - profile.q) / params.k;
  const double r_star = (1.0 - profile.r) / params.k;
  return params.p * branch_series(params.n, profile.q, profile.r, tail_tol) +
         (1.0 - params.p) * branch_series(params.n, q_star, r_star, tail_tol);
}

}  // namespace compsearch
