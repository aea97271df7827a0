#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fqpat/field.hpp"

namespace fqpat {

// A point of F_q^n with materialized coordinates. The canonical integer index
// of a point is sum coords[i] * q^i, a base-q digit encoding in [0, q^n).
struct Vec {
  std::vector<Field::Elem> coords;

  bool operator==(const Vec&) const = default;
};

// The vector space F_q^n. Points are addressed by canonical index; coordinate
// views are materialized on demand. Immutable and shareable across threads.
class Space {
 public:
  // throws TooLarge if q^n exceeds max_points (default 2^24)
  Space(std::shared_ptr<const Field> field, std::uint32_t n,
        std::uint64_t max_points = (1ull << 24));

  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }
  std::uint32_t q() const { return field_->q(); }
  std::uint32_t n() const { return n_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t index_of(const Vec& v) const;  // throws DimensionMismatch
  Vec vec_of(std::uint64_t idx) const;

  // Coordinate of point idx in position i.
  Field::Elem coord(std::uint64_t idx, std::uint32_t i) const {
    if (!digits_.empty()) return digits_[idx * n_ + i];
    return static_cast<Field::Elem>(idx / pow_[i] % q());
  }

  // Index-level vector operations (coordinatewise field arithmetic).
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t scalar_mul(Field::Elem c, std::uint64_t a) const;
  Field::Elem dot(std::uint64_t a, std::uint64_t b) const;

  // Vec-level operations with dimension checks.
  Vec vec_add(const Vec& u, const Vec& v) const;
  Vec vec_sub(const Vec& u, const Vec& v) const;
  Vec vec_scalar_mul(Field::Elem c, const Vec& v) const;
  Field::Elem vec_dot(const Vec& u, const Vec& v) const;

  // Rank of the spanned subspace, Gaussian elimination over GF(q).
  std::uint32_t rank(std::span<const std::uint64_t> points) const;
  std::uint32_t rank_vecs(const std::vector<Vec>& rows) const;

  // d(F): affine dimension of a nonempty point set, the rank of
  // {x_i - x_1 : i >= 2}. Singleton sets have dimension 0. Throws EmptySet.
  std::uint32_t affine_dim(std::span<const std::uint64_t> points) const;

 private:
  void check_dim(const Vec& v) const;

  std::shared_ptr<const Field> field_;
  std::uint32_t n_;
  std::uint64_t size_;
  std::vector<std::uint64_t> pow_;     // q^0 .. q^n
  std::vector<std::uint16_t> digits_;  // cached digit matrix when small
};

inline std::shared_ptr<const Space> make_space(std::shared_ptr<const Field> f, std::uint32_t n,
                                               std::uint64_t max_points = (1ull << 24)) {
  return std::make_shared<const Space>(std::move(f), n, max_points);
}

}  // namespace fqpat
