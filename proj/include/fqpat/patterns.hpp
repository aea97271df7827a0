#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fqpat/sampler.hpp"
#include "fqpat/space.hpp"

namespace fqpat {

enum class FamilyKind { ThreeAp, Parallelogram, RightTriangle, Plane };

const char* kind_name(FamilyKind k);                     // "3ap" | "pg" | "rt" | "plane"
std::optional<FamilyKind> kind_from_name(const std::string& s);

// (a, b, c) from the counting framework for the three non-plane kinds.
struct FrameworkParams {
  std::uint32_t a, b, c;
};

struct EnumCaps {
  std::uint64_t max_enum_points = 10'000;    // q^n cap for subset-style enumeration kinds
  std::uint64_t max_patterns = 5'000'000;    // materialized pattern-list cap
  std::uint64_t max_pair_census = 20'000;    // |A| cap for the pairwise intersection census
  std::uint64_t max_plane_stream = 20'000'000;  // |A(n,m)| cap for streaming plane enumeration
};

// A pattern is the set of its point indices, sorted ascending.
using Pattern = std::vector<std::uint64_t>;

// One of the four pattern families over a fixed space. Construction validates
// the family preconditions (3-APs need odd q; right triangles and planes need
// n >= 2; planes need 1 <= m <= n-1). Immutable; counting calls are
// const and safe to run concurrently.
class PatternFamily {
 public:
  static std::unique_ptr<const PatternFamily> make(FamilyKind kind,
                                                   std::shared_ptr<const Space> space,
                                                   std::uint32_t m = 0, EnumCaps caps = {});
  virtual ~PatternFamily() = default;

  FamilyKind kind() const { return kind_; }
  const Space& space() const { return *space_; }
  std::shared_ptr<const Space> space_ptr() const { return space_; }
  std::uint64_t arity() const { return arity_; }       // points per pattern
  std::uint32_t plane_dim() const { return m_; }       // m; 0 for non-plane kinds
  const EnumCaps& caps() const { return caps_; }
  std::optional<FrameworkParams> framework() const;    // nullopt for planes

  // Membership test for a set of distinct points. Throws WrongCardinality /
  // DuplicatePoints on malformed input.
  virtual bool is_member(std::span<const std::uint64_t> points) const = 0;

  // Exact |A| by structured counting (closed formula for planes), cached
  // after the first call. Throws TooLarge beyond the enumeration caps.
  std::uint64_t structured_count() const;

  // Every pattern exactly once, ascending lexicographic order of the sorted
  // index tuple. Materialized; throws TooLarge beyond caps.
  void enumerate(const std::function<void(const Pattern&)>& cb) const;
  const std::vector<std::uint64_t>& flat_patterns() const;  // lex order, arity() stride

  // X: number of patterns contained in E. Iterates subsets of E for the
  // subset-style kinds and the plane list for planes.
  virtual std::uint64_t count_in(const SampleSet& e) const = 0;
  virtual bool contains_any(const SampleSet& e) const;

  // Deterministic first contained pattern (scan order fixed); false if free.
  virtual bool find_in(const SampleSet& e, Pattern& out) const = 0;

  // All contained patterns, sorted lexicographically. Throws TooLarge if more
  // than max_pair_census patterns are contained.
  virtual void collect_in(const SampleSet& e, std::vector<Pattern>& out) const = 0;

  // Y: ordered pairs (T, T'), T != T', both contained in E, sharing at least
  // one and at most a-1 points.
  std::uint64_t count_pairs_in(const SampleSet& e) const;

 protected:
  PatternFamily(FamilyKind kind, std::shared_ptr<const Space> space, std::uint64_t arity,
                std::uint32_t m, EnumCaps caps)
      : kind_(kind), space_(std::move(space)), arity_(arity), m_(m), caps_(caps) {}

  virtual std::uint64_t compute_count() const = 0;
  virtual std::vector<std::uint64_t> materialize() const = 0;  // lex-sorted flat list

  void validate_points(std::span<const std::uint64_t> points) const;

  FamilyKind kind_;
  std::shared_ptr<const Space> space_;
  std::uint64_t arity_;
  std::uint32_t m_;
  EnumCaps caps_;

 private:
  mutable std::vector<std::uint64_t> flat_;
  mutable bool materialized_ = false;
  mutable std::uint64_t count_cache_ = 0;
  mutable bool counted_ = false;
};

// Structured enumeration machinery for subspaces and affine planes.

// All m-dimensional subspaces of the space, one reduced-row-echelon basis per
// subspace. The callback receives the basis rows as point indices and the
// pivot columns.
void rref_for_each(const Space& space, std::uint32_t m,
                   const std::function<void(std::span<const std::uint64_t> basis,
                                            std::span<const std::uint32_t> pivots)>& cb);

std::uint64_t rref_subspace_count(const Space& space, std::uint32_t m);

// Every affine m-plane exactly once as its full q^m-point set (sorted), in
// subspace-major order: RREF subspaces, then the q^(n-m) canonical coset
// representatives supported on the non-pivot coordinates. Throws TooLarge if
// |A(n,m)| exceeds caps.max_plane_stream.
void enumerate_planes(const Space& space, std::uint32_t m,
                      const std::function<void(std::span<const std::uint64_t> plane)>& cb,
                      const EnumCaps& caps = {});

// |G(n,m)| with saturation at 2^63 (internal cap arithmetic).
std::uint64_t gaussian_count_saturating(std::uint32_t n, std::uint32_t m, std::uint64_t q);

}  // namespace fqpat
