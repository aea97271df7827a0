// Test-only brute-force oracles, written against the field axioms directly so
// they stay independent of the production counting paths.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fqpat/sampler.hpp"
#include "fqpat/space.hpp"

namespace oracle {

using fqpat::Field;
using fqpat::SampleSet;
using fqpat::Space;

inline std::vector<Field::Elem> coords_of(const Space& s, std::uint64_t idx) {
  std::vector<Field::Elem> c(s.n());
  std::uint64_t v = idx;
  for (std::uint32_t i = 0; i < s.n(); ++i) {
    c[i] = static_cast<Field::Elem>(v % s.q());
    v /= s.q();
  }
  return c;
}

// {x, y, z} is a 3-AP iff some element is the average of the other two.
inline bool is_3ap(const Space& s, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  const Field& f = s.field();
  auto cx = coords_of(s, x), cy = coords_of(s, y), cz = coords_of(s, z);
  const std::array<const std::vector<Field::Elem>*, 3> c = {&cx, &cy, &cz};
  for (int ctr = 0; ctr < 3; ++ctr) {
    const auto& mid = *c[ctr];
    const auto& u = *c[(ctr + 1) % 3];
    const auto& w = *c[(ctr + 2) % 3];
    bool ok = true;
    for (std::uint32_t i = 0; i < s.n() && ok; ++i)
      ok = f.add(mid[i], mid[i]) == f.add(u[i], w[i]);
    if (ok) return true;
  }
  return false;
}

inline bool is_pg(const Space& s, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const Field& f = s.field();
  auto ca = coords_of(s, a), cb = coords_of(s, b), cc = coords_of(s, c), cd = coords_of(s, d);
  auto eq_sum = [&](const std::vector<Field::Elem>& u, const std::vector<Field::Elem>& v,
                    const std::vector<Field::Elem>& x, const std::vector<Field::Elem>& y) {
    for (std::uint32_t i = 0; i < s.n(); ++i)
      if (f.add(u[i], v[i]) != f.add(x[i], y[i])) return false;
    return true;
  };
  return eq_sum(ca, cb, cc, cd) || eq_sum(ca, cc, cb, cd) || eq_sum(ca, cd, cb, cc);
}

inline bool is_rt(const Space& s, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  const Field& f = s.field();
  auto cx = coords_of(s, x), cy = coords_of(s, y), cz = coords_of(s, z);
  const std::array<const std::vector<Field::Elem>*, 3> c = {&cx, &cy, &cz};
  for (int v = 0; v < 3; ++v) {
    const auto& cv = *c[v];
    const auto& cu = *c[(v + 1) % 3];
    const auto& cw = *c[(v + 2) % 3];
    Field::Elem acc = 0;
    for (std::uint32_t i = 0; i < s.n(); ++i)
      acc = f.add(acc, f.mul(f.sub(cu[i], cv[i]), f.sub(cw[i], cv[i])));
    if (acc == 0) return true;
  }
  return false;
}

// Allocation-free affine dimension for subset scans: rank of the difference
// set by in-place elimination over stack arrays (a <= 33, n <= 8).
inline std::uint32_t affine_dim_fast(const Space& s, const std::vector<std::uint64_t>& pts) {
  const Field& f = s.field();
  const std::uint32_t n = s.n();
  Field::Elem rows[32][8];
  std::uint32_t nrows = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    for (std::uint32_t c = 0; c < n; ++c)
      rows[nrows][c] = f.sub(s.coord(pts[i], c), s.coord(pts[0], c));
    ++nrows;
  }
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < n && rank < nrows; ++col) {
    std::uint32_t piv = rank;
    while (piv < nrows && rows[piv][col] == 0) ++piv;
    if (piv == nrows) continue;
    for (std::uint32_t c = col; c < n; ++c) std::swap(rows[rank][c], rows[piv][c]);
    Field::Elem inv = f.inv(rows[rank][col]);
    for (std::uint32_t c = col; c < n; ++c) rows[rank][c] = f.mul(inv, rows[rank][c]);
    for (std::uint32_t r = 0; r < nrows; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Field::Elem fac = rows[r][col];
      for (std::uint32_t c = col; c < n; ++c)
        rows[r][c] = f.sub(rows[r][c], f.mul(fac, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

// Visit every k-subset of v (ascending index order).
template <typename F>
void for_each_combination(const std::vector<std::uint64_t>& v, std::size_t k, F f) {
  if (k > v.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::uint64_t> pick(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) pick[i] = v[idx[i]];
    f(pick);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + v.size() - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Brute-force X: scan every a-subset of E with the oracle predicate.
inline std::uint64_t brute_count(const fqpat::PatternFamily& fam, const SampleSet& e) {
  const Space& s = fam.space();
  auto mem = e.members();
  std::uint64_t a = fam.arity();
  std::uint64_t count = 0;
  for_each_combination(mem, a, [&](const std::vector<std::uint64_t>& pick) {
    bool in = false;
    switch (fam.kind()) {
      case fqpat::FamilyKind::ThreeAp: in = is_3ap(s, pick[0], pick[1], pick[2]); break;
      case fqpat::FamilyKind::Parallelogram: in = is_pg(s, pick[0], pick[1], pick[2], pick[3]); break;
      case fqpat::FamilyKind::RightTriangle: in = is_rt(s, pick[0], pick[1], pick[2]); break;
      case fqpat::FamilyKind::Plane: in = affine_dim_fast(s, pick) == fam.plane_dim(); break;
    }
    if (in) ++count;
  });
  return count;
}

inline SampleSet set_of(std::shared_ptr<const Space> space, const std::vector<std::uint64_t>& pts) {
  SampleSet e;
  e.space = space;
  e.bits = fqpat::DenseBitset(space->size());
  for (auto p : pts) e.bits.set(p);
  return e;
}

inline SampleSet full_set(std::shared_ptr<const Space> space) {
  SampleSet e;
  e.space = space;
  e.bits = fqpat::DenseBitset(space->size());
  for (std::uint64_t i = 0; i < space->size(); ++i) e.bits.set(i);
  return e;
}

}  // namespace oracle
