#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fqpat/error.hpp"

namespace fqpat {

// Arithmetic context for GF(q), q = p^k a prime power, 2 <= q <= 2^16.
//
// Elements are encoded as integers in [0, q). For extension fields the base-p
// digits of the encoding are the coefficients of the representing polynomial,
// least significant digit = constant term. Encoding 0 is the additive
// identity and encoding 1 the multiplicative identity.
//
// For k > 1 the reduction polynomial is the lexicographically smallest monic
// irreducible of degree k over GF(p) (coefficients compared from degree k-1
// down to the constant term), found by exhaustive search, so that element
// encodings are reproducible across runs and implementations.
//
// Immutable after construction; all operations are const and thread-safe.
class Field {
 public:
  using Elem = std::uint32_t;

  explicit Field(std::uint32_t q);  // throws NotAPrimePower

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  bool prime_field() const { return k_ == 1; }

  // Monic reduction polynomial, coefficients c[0..k] with c[k] == 1.
  // Empty for prime fields.
  const std::vector<Elem>& reduction_poly() const { return red_; }

  Elem add(Elem a, Elem b) const { return tables_ ? add_t_[a * q_ + b] : add_slow(a, b); }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return tables_ ? neg_t_[a] : neg_slow(a); }
  Elem mul(Elem a, Elem b) const { return tables_ ? mul_t_[a * q_ + b] : mul_slow(a, b); }
  Elem inv(Elem a) const;  // throws BadParams on 0
  Elem pow(Elem a, std::uint64_t e) const;

 private:
  Elem add_slow(Elem a, Elem b) const;
  Elem neg_slow(Elem a) const;
  Elem mul_slow(Elem a, Elem b) const;
  Elem inv_slow(Elem a) const;

  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<Elem> red_;
  bool tables_ = false;
  std::vector<Elem> add_t_, mul_t_, neg_t_, inv_t_;
};

inline std::shared_ptr<const Field> make_field(std::uint32_t q) {
  return std::make_shared<const Field>(q);
}

}  // namespace fqpat
