#include "acqlab/bounds.hpp"

#include <cmath>
#include <string>

#include "acqlab/error.hpp"
#include "acqlab/matching.hpp"
#include "acqlab/rng.hpp"

namespace acqlab {

double chernoff_rate(double x) {
  if (x < 0) throw Error(ErrorCode::domain_error, "rate needs x >= 0");
  if (x == 0) return 1.0;
  return x * std::log(x) - x + 1;
}

namespace {

TailBound tail(double mu, double k) { return {mu, k, std::exp(-mu * chernoff_rate(k / mu))}; }

void require_mean(double mu) {
  if (!(mu > 0)) throw Error(ErrorCode::domain_error, "mean must be positive, got " + std::to_string(mu));
}

}  // namespace

TailBound chernoff_upper(double mu, double k) {
  require_mean(mu);
  if (!(k >= mu)) throw Error(ErrorCode::domain_error, "upper tail needs k >= mu");
  return tail(mu, k);
}

TailBound chernoff_lower(double mu, double k) {
  require_mean(mu);
  if (!(k <= mu) || k < 0) throw Error(ErrorCode::domain_error, "lower tail needs 0 <= k <= mu");
  return tail(mu, k);
}

ProportionEstimate wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw Error(ErrorCode::domain_error, "no trials");
  ProportionEstimate e;
  e.successes = successes;
  e.trials = trials;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  e.estimate = phat;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  e.low = std::max(0.0, centre - half);
  e.high = std::min(1.0, centre + half);
  return e;
}

ProportionEstimate pm_probability(std::size_t t, double p, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::domain_error, "pm_probability needs at least one trial");
  if (!(p >= 0 && p <= 1)) throw Error(ErrorCode::domain_error, "edge probability outside [0, 1]");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, "pm_trial", i));
    BipartiteGraph b(t, t);
    for (std::uint32_t l = 0; l < t; ++l)
      for (std::uint32_t r = 0; r < t; ++r)
        if (rng.uniform01() < p) b.add_edge(l, r);
    if (max_matching(std::move(b)).size == t) ++hits;
  }
  return wilson_interval(hits, trials);
}

}  // namespace acqlab
