#pragma once

#include <cstddef>
#include <cstdint>

namespace acqlab {

// Tail bound e^{-mu H(k / mu)} with H(x) = x ln x - x + 1 (H(0) = 1).
struct TailBound {
  double mu = 0;
  double k = 0;
  double bound = 1;
};

double chernoff_rate(double x);

// P(X >= k) for a sum of independent indicators with mean mu; needs k >= mu.
TailBound chernoff_upper(double mu, double k);
// P(X <= k); needs 0 <= k <= mu.
TailBound chernoff_lower(double mu, double k);

// Monte Carlo proportion with a Wilson score interval.
struct ProportionEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double estimate = 0;
  double low = 0;
  double high = 1;
};

ProportionEstimate wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

// Share of random bipartite graphs B(t, p) with a perfect matching. Trial i
// draws one uniform per (left, right) pair from its own sub-stream and keeps
// the edge when the uniform is below p, so estimates for different p with
// the same seed are coupled and monotone in p.
ProportionEstimate pm_probability(std::size_t t, double p, std::size_t trials, std::uint64_t seed);

}  // namespace acqlab
