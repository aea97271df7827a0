#include "fqpat/space.hpp"

#include <algorithm>

namespace fqpat {

Space::Space(std::shared_ptr<const Field> field, std::uint32_t n, std::uint64_t max_points)
    : field_(std::move(field)), n_(n) {
  if (n_ == 0) fail(Errc::BadParams, "dimension n must be >= 1");
  pow_.resize(n_ + 1);
  pow_[0] = 1;
  const std::uint64_t q = field_->q();
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (pow_[i] > max_points / q + 1) fail(Errc::TooLarge, "q^n exceeds the space cap");
    pow_[i + 1] = pow_[i] * q;
  }
  size_ = pow_[n_];
  if (size_ > max_points) fail(Errc::TooLarge, "q^n exceeds the space cap");

  if (size_ * n_ <= (1ull << 22)) {
    digits_.resize(size_ * n_);
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
      std::uint64_t v = idx;
      for (std::uint32_t i = 0; i < n_; ++i) {
        digits_[idx * n_ + i] = static_cast<std::uint16_t>(v % q);
        v /= q;
      }
    }
  }
}

void Space::check_dim(const Vec& v) const {
  if (v.coords.size() != n_)
    fail(Errc::DimensionMismatch,
         "vector has " + std::to_string(v.coords.size()) + " coords, space dimension is " + std::to_string(n_));
  for (auto c : v.coords)
    if (c >= q()) fail(Errc::BadParams, "coordinate out of field range");
}

std::uint64_t Space::index_of(const Vec& v) const {
  check_dim(v);
  std::uint64_t idx = 0;
  for (std::uint32_t i = 0; i < n_; ++i) idx += static_cast<std::uint64_t>(v.coords[i]) * pow_[i];
  return idx;
}

Vec Space::vec_of(std::uint64_t idx) const {
  Vec v;
  v.coords.resize(n_);
  for (std::uint32_t i = 0; i < n_; ++i) v.coords[i] = coord(idx, i);
  return v;
}

std::uint64_t Space::add(std::uint64_t a, std::uint64_t b) const {
  const Field& f = *field_;
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < n_; ++i) out += static_cast<std::uint64_t>(f.add(coord(a, i), coord(b, i))) * pow_[i];
  return out;
}

std::uint64_t Space::sub(std::uint64_t a, std::uint64_t b) const {
  const Field& f = *field_;
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < n_; ++i) out += static_cast<std::uint64_t>(f.sub(coord(a, i), coord(b, i))) * pow_[i];
  return out;
}

std::uint64_t Space::neg(std::uint64_t a) const {
  const Field& f = *field_;
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < n_; ++i) out += static_cast<std::uint64_t>(f.neg(coord(a, i))) * pow_[i];
  return out;
}

std::uint64_t Space::scalar_mul(Field::Elem c, std::uint64_t a) const {
  const Field& f = *field_;
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < n_; ++i) out += static_cast<std::uint64_t>(f.mul(c, coord(a, i))) * pow_[i];
  return out;
}

Field::Elem Space::dot(std::uint64_t a, std::uint64_t b) const {
  const Field& f = *field_;
  Field::Elem acc = 0;
  for (std::uint32_t i = 0; i < n_; ++i) acc = f.add(acc, f.mul(coord(a, i), coord(b, i)));
  return acc;
}

Vec Space::vec_add(const Vec& u, const Vec& v) const {
  check_dim(u);
  check_dim(v);
  Vec out;
  out.coords.resize(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out.coords[i] = field_->add(u.coords[i], v.coords[i]);
  return out;
}

Vec Space::vec_sub(const Vec& u, const Vec& v) const {
  check_dim(u);
  check_dim(v);
  Vec out;
  out.coords.resize(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out.coords[i] = field_->sub(u.coords[i], v.coords[i]);
  return out;
}

Vec Space::vec_scalar_mul(Field::Elem c, const Vec& v) const {
  check_dim(v);
  Vec out;
  out.coords.resize(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out.coords[i] = field_->mul(c, v.coords[i]);
  return out;
}

Field::Elem Space::vec_dot(const Vec& u, const Vec& v) const {
  check_dim(u);
  check_dim(v);
  Field::Elem acc = 0;
  for (std::uint32_t i = 0; i < n_; ++i) acc = field_->add(acc, field_->mul(u.coords[i], v.coords[i]));
  return acc;
}

std::uint32_t Space::rank_vecs(const std::vector<Vec>& rows) const {
  if (rows.empty()) fail(Errc::EmptySet, "rank of empty list");
  const Field& f = *field_;
  std::vector<std::vector<Field::Elem>> mat;
  mat.reserve(rows.size());
  for (const Vec& r : rows) {
    check_dim(r);
    mat.push_back(r.coords);
  }
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < n_ && rank < mat.size(); ++col) {
    std::size_t piv = rank;
    while (piv < mat.size() && mat[piv][col] == 0) ++piv;
    if (piv == mat.size()) continue;
    std::swap(mat[rank], mat[piv]);
    Field::Elem pinv = f.inv(mat[rank][col]);
    for (std::uint32_t j = col; j < n_; ++j) mat[rank][j] = f.mul(pinv, mat[rank][j]);
    for (std::size_t r = 0; r < mat.size(); ++r) {
      if (r == rank || mat[r][col] == 0) continue;
      Field::Elem fac = mat[r][col];
      for (std::uint32_t j = col; j < n_; ++j) mat[r][j] = f.sub(mat[r][j], f.mul(fac, mat[rank][j]));
    }
    ++rank;
  }
  return rank;
}

std::uint32_t Space::rank(std::span<const std::uint64_t> points) const {
  if (points.empty()) fail(Errc::EmptySet, "rank of empty list");
  std::vector<Vec> rows;
  rows.reserve(points.size());
  for (auto p : points) rows.push_back(vec_of(p));
  return rank_vecs(rows);
}

std::uint32_t Space::affine_dim(std::span<const std::uint64_t> points) const {
  if (points.empty()) fail(Errc::EmptySet, "affine dimension of empty set");
  if (points.size() == 1) return 0;
  std::vector<std::uint64_t> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  return rank(diffs);
}

}  // namespace fqpat
