#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fqpat/bitset.hpp"
#include "fqpat/space.hpp"

namespace fqpat {
namespace rng {

// Counter-based generator "mix13-ctr-v1": a keyed application of the
// SplitMix64 finalizer (Stafford's Mix13). The per-point value depends only
// on (seed, stream, trial, counter), so draws are reorderable and
// parallel-safe; the generator identity is part of the reproducibility
// contract and is documented in the README.
inline std::uint64_t mix13(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr const char* kGeneratorId = "mix13-ctr-v1";

constexpr std::uint64_t kStreamPoint = 0;    // per-point Bernoulli/coupled uniforms
constexpr std::uint64_t kStreamShuffle = 1;  // uniform-M Fisher-Yates draws

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
    key_ = mix13(seed + 0x9E3779B97F4A7C15ull);
    key_ = mix13(key_ ^ (stream + 0xD1B54A32D192ED03ull));
    key_ = mix13(key_ ^ (trial + 0x8CB92BA72F3D8DD7ull));
  }

  std::uint64_t at(std::uint64_t counter) const { return mix13(key_ ^ (counter + 0x2545F4914F6CDD1Dull)); }

  // Uniform in [0, 1) with 53 random bits.
  double unit(std::uint64_t counter) const { return static_cast<double>(at(counter) >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
};

}  // namespace rng

enum class Model { Bernoulli, UniformM };

struct Provenance {
  Model model = Model::Bernoulli;
  double delta = 0.0;    // Bernoulli only
  std::uint64_t M = 0;   // UniformM only
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

// A subset E of F_q^n as a membership bitset plus provenance.
struct SampleSet {
  std::shared_ptr<const Space> space;
  DenseBitset bits;
  Provenance prov;

  std::uint64_t size_points() const { return space->size(); }
  std::uint64_t popcount() const { return bits.popcount(); }
  bool test(std::uint64_t i) const { return bits.test(i); }
  std::vector<std::uint64_t> members() const { return bits.members(); }
};

// Each point kept independently with probability delta; deterministic under
// (seed, trial). Throws BadParams on delta outside [0, 1].
SampleSet sample_bernoulli(std::shared_ptr<const Space> space, double delta, std::uint64_t seed,
                           std::uint64_t trial);

// Uniform M-subset via seeded partial Fisher-Yates over point indices.
// Throws BadParams on M > q^n.
SampleSet sample_uniform_m(std::shared_ptr<const Space> space, std::uint64_t M, std::uint64_t seed,
                           std::uint64_t trial);

// One coupled draw: a single uniform per point, thresholded at each delta.
// delta_list must be sorted ascending; the returned sets are nested.
std::vector<SampleSet> coupled_sweep(std::shared_ptr<const Space> space,
                                     const std::vector<double>& delta_list, std::uint64_t seed,
                                     std::uint64_t trial);

}  // namespace fqpat
