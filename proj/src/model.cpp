#include "compsearch/model.hpp"

#include <cmath>

namespace compsearch {

namespace {

constexpr long kSquaringLimit = 1024;

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0,1]");
  }
}

void require_open_trust(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("q must lie strictly between 0 and 1");
  }
}

void require_useful_signal(double p, int k) {
  if (k < 1) throw std::domain_error("k must be at least 1");
  if (!(p > 1.0 / (k + 1))) throw std::domain_error("p must exceed 1/(k+1)");
  if (!(p < 1.0)) throw std::domain_error("p must be less than 1");
}

// Expected share from one pointer branch: the focal searcher hits H with
// per-turn probability `own`, each of the others with `others`.
double branch_payoff(int n, double others, double own) {
  const double first_turn_share = own * hit_probability(others, n) / (n * others);
  // 1 - (1-others)^(n-1) (1-own), rearranged so no large terms cancel.
  const double per_turn_end =
      hit_probability(others, n - 1) + survival_power(others, n - 1) * own;
  return first_turn_share / per_turn_end;
}

}  // namespace

GameParams GameParams::make(int n, int k, double p) {
  GameParams params{n, k, p};
  params.validate();
  return params;
}

void GameParams::validate() const {
  if (n < 2) throw InvalidParameter("n must be at least 2");
  if (k < 1) throw InvalidParameter("k must be at least 1");
  if (!(p > 1.0 / (k + 1))) throw InvalidParameter("p must exceed 1/(k+1)");
  if (!(p < 1.0)) throw InvalidParameter("p must be less than 1");
}

double derived(double x, int k) {
  require_probability(x, "probability");
  if (k < 1) throw std::domain_error("k must be at least 1");
  return (1.0 - x) / k;
}

double survival_power(double x, long n) {
  if (n <= 0) return 1.0;
  if (n > kSquaringLimit) return std::exp(static_cast<double>(n) * std::log1p(-x));
  double base = 1.0 - x;
  double result = 1.0;
  for (long e = n; e > 0; e >>= 1) {
    if (e & 1) result *= base;
    base *= base;
  }
  return result;
}

double hit_probability(double x, long n) {
  if (n <= 0) return 0.0;
  return -std::expm1(static_cast<double>(n) * std::log1p(-x));
}

double focal_payoff(const GameParams& params, const TrustProfile& profile) {
  params.validate();
  require_open_trust(profile.q);
  require_probability(profile.r, "r");
  const double q_star = derived(profile.q, params.k);
  const double r_star = derived(profile.r, params.k);
  return params.p * branch_payoff(params.n, profile.q, profile.r) +
         (1.0 - params.p) * branch_payoff(params.n, q_star, r_star);
}

double focal_payoff_large_n(const GameParams& params, const TrustProfile& profile) {
  params.validate();
  require_open_trust(profile.q);
  require_probability(profile.r, "r");
  const auto& [q, r] = profile;
  return (params.p * r / q + (1.0 - params.p) * (1.0 - r) / (1.0 - q)) / params.n;
}

double equilibrium_residual(const GameParams& params, double q) {
  params.validate();
  require_probability(q, "q");
  const int n = params.n;
  const double q_star = derived(q, params.k);
  const double p_star = derived(params.p, params.k);
  return params.p * q_star * hit_probability(q_star, n) * hit_probability(q, n - 1) -
         p_star * q * hit_probability(q, n) * hit_probability(q_star, n - 1);
}

double reliability_for_trust(int n, int k, double q) {
  if (n < 2) throw std::domain_error("n must be at least 2");
  if (k < 1) throw std::domain_error("k must be at least 1");
  if (!(q > 1.0 / (k + 1) && q < 1.0)) {
    throw std::domain_error("q must lie strictly between 1/(k+1) and 1");
  }
  const double q_star = (1.0 - q) / k;
  const double toward = hit_probability(q_star, n - 1) * hit_probability(q, n) * q;
  const double away = hit_probability(q_star, n) * hit_probability(q, n - 1) * (1.0 - q);
  return toward / (toward + away);
}

double decrease_threshold(double p, int k) {
  require_useful_signal(p, k);
  if (k == 1) return 3.0;
  // ln((k-1+p)/(k(1-p))) written as log1p of the excess over 1.
  const double log_ratio = std::log1p((p * (k + 1) - 1.0) / (k * (1.0 - p)));
  return 3.0 + 2.0 * std::log(static_cast<double>(k)) / log_ratio;
}

double single_searcher_trust(double p, int k) {
  require_useful_signal(p, k);
  const double denominator = 1.0 - (k + 1) * (1.0 - p);
  if (std::abs(denominator) <= 1e-12) {
    throw std::domain_error("single-searcher trust is undefined at p = k/(k+1)");
  }
  return (p - std::sqrt(static_cast<double>(k)) * std::sqrt(p * (1.0 - p))) / denominator;
}

}  // namespace compsearch
