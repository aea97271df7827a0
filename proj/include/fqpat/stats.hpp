#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fqpat/census.hpp"
#include "fqpat/patterns.hpp"

namespace fqpat {

struct MeanStderr {
  double value = 0.0;
  double stderror = 0.0;
};

// Tally of per-trial pattern counts. Factorial moments and their standard
// errors are exact functions of the tally since counts are small integers.
struct Histogram {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t trials = 0;

  double mean() const;
  double variance() const;
  // empirical E((X)_r) = E[X(X-1)...(X-r+1)] with its standard error
  MeanStderr factorial_moment(std::uint32_t r) const;
};

struct PoissonFit {
  double lambda = 0.0;
  double tv_distance = 0.0;  // includes the Poisson tail beyond the observed range
  std::vector<MeanStderr> moments;  // r = 1..r_max
};

struct SweepRow {
  double scale = 0.0;
  double delta = 0.0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double stderror = 0.0;
  double e_x = 0.0;  // census E(X) overlay
};

// Fraction of trials whose sample contains at least one pattern, with the
// binomial standard error. Deterministic under (trials, seed).
MeanStderr estimate_p_contains(const PatternFamily& family, double delta, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers = 1);

Histogram distribution_X(const PatternFamily& family, double delta, std::uint64_t trials,
                         std::uint64_t seed, unsigned workers = 1);

// Total variation distance between two finite pmfs given as aligned vectors.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

PoissonFit poisson_fit(const Histogram& hist, double lambda, std::uint32_t r_max = 4);

// Coupled sweep over delta_s = clamp(s * t(n,q), 0, 1): the same per-point
// uniforms serve every scale, so the p_hat column is monotone pathwise, not
// merely statistically. scale_list must be positive and ascending.
std::vector<SweepRow> threshold_sweep(const PatternFamily& family,
                                      const std::vector<double>& scale_list, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers = 1);

// Mean per-trial count of ordered intersecting contained pairs (Y).
MeanStderr empirical_EY(const PatternFamily& family, double delta, std::uint64_t trials,
                        std::uint64_t seed, unsigned workers = 1);

}  // namespace fqpat
