#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fqpat/census.hpp"
#include "fqpat/patterns.hpp"

namespace fqpat {

struct FreeSetResult {
  std::vector<std::uint64_t> points;  // sorted ascending
  double delta_used = 0.0;
  std::uint64_t initial_size = 0;  // |E| before deletions
  std::uint64_t size = 0;          // |S|
  std::uint64_t deletions = 0;
  bool certified = false;
  bool small_sample_warning = false;  // q^n * delta < 100
};

// Deletion construction at |A| delta^a = 1/2: sample E ~ Bernoulli(delta),
// then while some pattern is contained remove the lowest-index point of the
// first pattern found, rescanning after each removal. The result is always
// verified pattern-free before returning.
FreeSetResult deletion_construct(const PatternFamily& family, std::uint64_t seed);

bool verify_free(const PatternFamily& family, std::span<const std::uint64_t> points);

struct ExtremalRow {
  FamilyKind kind;
  std::uint32_t q = 0, n = 0, m = 0;
  double delta = 0.0;
  std::uint64_t best_size = 0;  // best certified |S| over the seed budget
  std::uint64_t best_seed = 0;
  double rate = 0.0;  // target lower-bound growth rate
  double ratio = 0.0;  // best_size / rate
  std::uint32_t seeds = 0;
};

// q^(n/3) 3-APs, q^(n/4) parallelograms, q^(1/3) right triangles,
// q^(n(1-(m+1)/q^m)) m-planes.
double extremal_rate(const PatternFamily& family);

ExtremalRow extremal_row(const PatternFamily& family, std::uint32_t seed_budget,
                         std::uint64_t base_seed);

}  // namespace fqpat
