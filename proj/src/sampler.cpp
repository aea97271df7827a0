#include "fqpat/sampler.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

namespace fqpat {

std::string DenseBitset::hex() const {
  std::string out;
  out.reserve(words_.size() * 16);
  char buf[17];
  for (auto w : words_) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
    out += buf;
  }
  return out;
}

SampleSet sample_bernoulli(std::shared_ptr<const Space> space, double delta, std::uint64_t seed,
                           std::uint64_t trial) {
  if (!(delta >= 0.0 && delta <= 1.0)) fail(Errc::BadParams, "delta must be in [0, 1]");
  SampleSet e;
  e.space = space;
  e.bits = DenseBitset(space->size());
  e.prov = {Model::Bernoulli, delta, 0, seed, trial};
  rng::CounterRng r(seed, rng::kStreamPoint, trial);
  const std::uint64_t N = space->size();
  for (std::uint64_t x = 0; x < N; ++x)
    if (r.unit(x) < delta) e.bits.set(x);
  return e;
}

namespace {

// Unbiased bounded draw by rejection; advances the counter as needed.
std::uint64_t bounded(const rng::CounterRng& r, std::uint64_t& counter, std::uint64_t range) {
  const std::uint64_t limit = ~0ull - (~0ull % range + 1) % range;  // last accepted value
  for (;;) {
    std::uint64_t v = r.at(counter++);
    if (v <= limit) return v % range;
  }
}

}  // namespace

SampleSet sample_uniform_m(std::shared_ptr<const Space> space, std::uint64_t M, std::uint64_t seed,
                           std::uint64_t trial) {
  const std::uint64_t N = space->size();
  if (M > N) fail(Errc::BadParams, "M exceeds q^n");
  SampleSet e;
  e.space = space;
  e.bits = DenseBitset(N);
  e.prov = {Model::UniformM, 0.0, M, seed, trial};
  rng::CounterRng r(seed, rng::kStreamShuffle, trial);
  std::uint64_t counter = 0;
  // Partial Fisher-Yates with a sparse swap map: O(M) memory.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  swapped.reserve(M * 2);
  for (std::uint64_t i = 0; i < M; ++i) {
    std::uint64_t j = i + bounded(r, counter, N - i);
    auto it_j = swapped.find(j);
    std::uint64_t pick = (it_j == swapped.end()) ? j : it_j->second;
    auto it_i = swapped.find(i);
    std::uint64_t vi = (it_i == swapped.end()) ? i : it_i->second;
    swapped[j] = vi;
    e.bits.set(pick);
  }
  return e;
}

std::vector<SampleSet> coupled_sweep(std::shared_ptr<const Space> space,
                                     const std::vector<double>& delta_list, std::uint64_t seed,
                                     std::uint64_t trial) {
  for (double d : delta_list)
    if (!(d >= 0.0 && d <= 1.0)) fail(Errc::BadParams, "delta must be in [0, 1]");
  if (!std::is_sorted(delta_list.begin(), delta_list.end()))
    fail(Errc::BadParams, "delta_list must be sorted ascending");
  std::vector<SampleSet> out(delta_list.size());
  for (std::size_t s = 0; s < delta_list.size(); ++s) {
    out[s].space = space;
    out[s].bits = DenseBitset(space->size());
    out[s].prov = {Model::Bernoulli, delta_list[s], 0, seed, trial};
  }
  rng::CounterRng r(seed, rng::kStreamPoint, trial);
  const std::uint64_t N = space->size();
  for (std::uint64_t x = 0; x < N; ++x) {
    double u = r.unit(x);
    for (std::size_t s = delta_list.size(); s-- > 0;) {
      if (u < delta_list[s])
        out[s].bits.set(x);
      else
        break;  // deltas below this one cannot include x either
    }
  }
  return out;
}

}  // namespace fqpat
