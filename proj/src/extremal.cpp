#include "fqpat/extremal.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fqpat {

FreeSetResult deletion_construct(const PatternFamily& family, std::uint64_t seed) {
  using bf = boost::multiprecision::cpp_bin_float_50;
  double logA = static_cast<double>(boost::multiprecision::log(bf(family_size(family))));
  double delta = std::exp(-(std::log(2.0) + logA) / static_cast<double>(family.arity()));

  FreeSetResult r;
  r.delta_used = delta;
  r.small_sample_warning = static_cast<double>(family.space().size()) * delta < 100.0;

  SampleSet s = sample_bernoulli(family.space_ptr(), delta, seed, 0);
  r.initial_size = s.popcount();
  Pattern t;
  while (family.find_in(s, t)) {
    s.bits.reset(t.front());  // lowest-index point of the first pattern found
    ++r.deletions;
  }
  r.points = s.members();
  r.size = r.points.size();
  r.certified = !family.contains_any(s);
  if (!r.certified) fail(Errc::Internal, "deletion loop terminated on a non-free set");
  return r;
}

bool verify_free(const PatternFamily& family, std::span<const std::uint64_t> points) {
  SampleSet s;
  s.space = family.space_ptr();
  s.bits = DenseBitset(family.space().size());
  for (auto p : points) {
    if (p >= family.space().size()) fail(Errc::BadParams, "point index out of range");
    s.bits.set(p);
  }
  return family.count_in(s) == 0;
}

double extremal_rate(const PatternFamily& family) {
  const double q = static_cast<double>(family.space().q());
  const double n = static_cast<double>(family.space().n());
  switch (family.kind()) {
    case FamilyKind::ThreeAp: return std::pow(q, n / 3.0);
    case FamilyKind::Parallelogram: return std::pow(q, n / 4.0);
    case FamilyKind::RightTriangle: return std::pow(q, 1.0 / 3.0);
    case FamilyKind::Plane: {
      double qm = std::pow(q, static_cast<double>(family.plane_dim()));
      return std::pow(q, n * (1.0 - (family.plane_dim() + 1.0) / qm));
    }
  }
  fail(Errc::Internal, "unknown kind");
}

ExtremalRow extremal_row(const PatternFamily& family, std::uint32_t seed_budget,
                         std::uint64_t base_seed) {
  if (seed_budget == 0) fail(Errc::BadParams, "need at least one seed");
  ExtremalRow row;
  row.kind = family.kind();
  row.q = family.space().q();
  row.n = family.space().n();
  row.m = family.plane_dim();
  row.seeds = seed_budget;
  for (std::uint32_t i = 0; i < seed_budget; ++i) {
    FreeSetResult r = deletion_construct(family, base_seed + i);
    if (!verify_free(family, r.points)) fail(Errc::Internal, "constructed set fails re-verification");
    row.delta = r.delta_used;
    if (i == 0 || r.size > row.best_size) {
      row.best_size = r.size;
      row.best_seed = base_seed + i;
    }
  }
  row.rate = extremal_rate(family);
  row.ratio = static_cast<double>(row.best_size) / row.rate;
  return row;
}

}  // namespace fqpat
