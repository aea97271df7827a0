#include "fqpat/patterns.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <string>
#include <unordered_map>

namespace fqpat {

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::ThreeAp: return "3ap";
    case FamilyKind::Parallelogram: return "pg";
    case FamilyKind::RightTriangle: return "rt";
    case FamilyKind::Plane: return "plane";
  }
  return "?";
}

std::optional<FamilyKind> kind_from_name(const std::string& s) {
  if (s == "3ap") return FamilyKind::ThreeAp;
  if (s == "pg") return FamilyKind::Parallelogram;
  if (s == "rt") return FamilyKind::RightTriangle;
  if (s == "plane") return FamilyKind::Plane;
  return std::nullopt;
}

std::optional<FrameworkParams> PatternFamily::framework() const {
  switch (kind_) {
    case FamilyKind::ThreeAp: return FrameworkParams{3, 2, 0};
    case FamilyKind::Parallelogram: return FrameworkParams{4, 3, 0};
    case FamilyKind::RightTriangle: return FrameworkParams{3, 3, 1};
    case FamilyKind::Plane: return std::nullopt;
  }
  return std::nullopt;
}

void PatternFamily::validate_points(std::span<const std::uint64_t> points) const {
  if (points.size() != arity_)
    fail(Errc::WrongCardinality, "expected " + std::to_string(arity_) + " points, got " +
                                     std::to_string(points.size()));
  std::vector<std::uint64_t> s(points.begin(), points.end());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == s[i + 1]) fail(Errc::DuplicatePoints, "points must be distinct");
  if (!s.empty() && s.back() >= space_->size()) fail(Errc::BadParams, "point index out of range");
}

namespace {
std::mutex g_family_cache_mu;
}

std::uint64_t PatternFamily::structured_count() const {
  {
    std::scoped_lock lk(g_family_cache_mu);
    if (counted_) return count_cache_;
  }
  std::uint64_t c = compute_count();  // outside the lock: materialize() re-enters here
  std::scoped_lock lk(g_family_cache_mu);
  if (!counted_) {
    count_cache_ = c;
    counted_ = true;
  }
  return count_cache_;
}

const std::vector<std::uint64_t>& PatternFamily::flat_patterns() const {
  {
    std::scoped_lock lk(g_family_cache_mu);
    if (materialized_) return flat_;
  }
  std::vector<std::uint64_t> built = materialize();
  std::scoped_lock lk(g_family_cache_mu);
  if (!materialized_) {
    flat_ = std::move(built);
    materialized_ = true;
  }
  return flat_;
}

void PatternFamily::enumerate(const std::function<void(const Pattern&)>& cb) const {
  const auto& flat = flat_patterns();
  const std::size_t a = arity_;
  Pattern p(a);
  for (std::size_t off = 0; off < flat.size(); off += a) {
    std::copy(flat.begin() + off, flat.begin() + off + a, p.begin());
    cb(p);
  }
}

bool PatternFamily::contains_any(const SampleSet& e) const { return count_in(e) > 0; }

std::uint64_t PatternFamily::count_pairs_in(const SampleSet& e) const {
  std::vector<Pattern> pats;
  collect_in(e, pats);
  const std::size_t P = pats.size();
  if (P < 2) return 0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> through;
  through.reserve(P * arity_);
  for (std::uint32_t id = 0; id < P; ++id)
    for (auto pt : pats[id]) through[pt].push_back(id);
  std::vector<std::uint64_t> keys;
  for (const auto& [pt, ids] : through) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        keys.push_back(static_cast<std::uint64_t>(ids[i]) * P + ids[j]);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  // Distinct patterns of equal size share at most a-1 points, so every
  // intersecting unordered pair contributes exactly two ordered pairs.
  return 2 * static_cast<std::uint64_t>(keys.size());
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t SAT = 1ull << 62;
  return (a >= SAT || b >= SAT || a + b >= SAT) ? SAT : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t SAT = 1ull << 62;
  if (a == 0 || b == 0) return 0;
  if (a >= SAT || b >= SAT || a > SAT / b) return SAT;
  return a * b;
}

// --------------------------------------------------------------------------
// 3-term arithmetic progressions
// --------------------------------------------------------------------------

class ThreeApFamily final : public PatternFamily {
 public:
  ThreeApFamily(std::shared_ptr<const Space> space, EnumCaps caps)
      : PatternFamily(FamilyKind::ThreeAp, std::move(space), 3, 0, caps) {
    const Field& f = space_->field();
    if (f.p() == 2)
      fail(Errc::CharTwo, "3-APs need odd q; three distinct vectors x, x+v, x+2v cannot exist in characteristic 2");
    two_ = f.add(1, 1);
    inv2_ = f.inv(two_);
    char3_ = (f.p() == 3);
  }

  // Third points completing {u, w} to a 3-AP set: 2w-u, 2u-w and the
  // midpoint (u+w)/2. In characteristic 3 the three coincide.
  int candidates(std::uint64_t u, std::uint64_t w, std::array<std::uint64_t, 3>& out) const {
    const Space& S = *space_;
    out[0] = S.sub(S.scalar_mul(two_, w), u);
    if (char3_) return 1;
    out[1] = S.sub(S.scalar_mul(two_, u), w);
    out[2] = S.scalar_mul(inv2_, S.add(u, w));
    return 3;
  }

  bool is_member(std::span<const std::uint64_t> points) const override {
    validate_points(points);
    const Space& S = *space_;
    for (int c = 0; c < 3; ++c) {
      std::uint64_t ctr = points[c];
      std::uint64_t x = points[(c + 1) % 3], y = points[(c + 2) % 3];
      if (S.scalar_mul(two_, ctr) == S.add(x, y)) return true;
    }
    return false;
  }

  std::uint64_t compute_count() const override {
    const std::uint64_t N = space_->size();
    if (N > caps_.max_enum_points) fail(Errc::TooLarge, "q^n exceeds the enumeration cap");
    std::array<std::uint64_t, 3> z;
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < N; ++i) {
      for (std::uint64_t j = i + 1; j < N; ++j) {
        int nc = candidates(i, j, z);
        for (int c = 0; c < nc; ++c)
          if (z[c] > j) ++count;  // count each set at its two smallest points
      }
    }
    return count;
  }

  std::uint64_t count_in(const SampleSet& e) const override {
    auto mem = e.members();
    std::array<std::uint64_t, 3> z;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < mem.size(); ++i) {
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        int nc = candidates(mem[i], mem[j], z);
        for (int c = 0; c < nc; ++c)
          if (z[c] > mem[j] && e.test(z[c])) ++count;
      }
    }
    return count;
  }

  bool contains_any(const SampleSet& e) const override {
    auto mem = e.members();
    std::array<std::uint64_t, 3> z;
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        int nc = candidates(mem[i], mem[j], z);
        for (int c = 0; c < nc; ++c)
          if (e.test(z[c])) return true;  // candidates are never u or w
      }
    return false;
  }

  bool find_in(const SampleSet& e, Pattern& out) const override {
    auto mem = e.members();
    std::array<std::uint64_t, 3> z;
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        int nc = candidates(mem[i], mem[j], z);
        std::sort(z.begin(), z.begin() + nc);
        for (int c = 0; c < nc; ++c)
          if (e.test(z[c])) {
            out = {mem[i], mem[j], z[c]};
            std::sort(out.begin(), out.end());
            return true;
          }
      }
    return false;
  }

  void collect_in(const SampleSet& e, std::vector<Pattern>& out) const override {
    out.clear();
    auto mem = e.members();
    std::array<std::uint64_t, 3> z;
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        int nc = candidates(mem[i], mem[j], z);
        std::sort(z.begin(), z.begin() + nc);
        for (int c = 0; c < nc; ++c)
          if (z[c] > mem[j] && e.test(z[c])) {
            out.push_back({mem[i], mem[j], z[c]});
            if (out.size() > caps_.max_pair_census)
              fail(Errc::TooLarge, "more contained patterns than the pair-census cap");
          }
      }
  }

 protected:
  std::vector<std::uint64_t> materialize() const override {
    if (structured_count() > caps_.max_patterns) fail(Errc::TooLarge, "family exceeds the pattern cap");
    const std::uint64_t N = space_->size();
    std::vector<std::uint64_t> flat;
    std::array<std::uint64_t, 3> z;
    for (std::uint64_t i = 0; i < N; ++i)
      for (std::uint64_t j = i + 1; j < N; ++j) {
        int nc = candidates(i, j, z);
        std::sort(z.begin(), z.begin() + nc);
        for (int c = 0; c < nc; ++c)
          if (z[c] > j) {
            flat.push_back(i);
            flat.push_back(j);
            flat.push_back(z[c]);
          }
      }
    return flat;
  }

 private:
  Field::Elem two_, inv2_;
  bool char3_;
};

// --------------------------------------------------------------------------
// Parallelograms
// --------------------------------------------------------------------------

class ParallelogramFamily final : public PatternFamily {
 public:
  ParallelogramFamily(std::shared_ptr<const Space> space, EnumCaps caps)
      : PatternFamily(FamilyKind::Parallelogram, std::move(space), 4, 0, caps),
        char2_(space_->field().p() == 2) {}

  bool is_member(std::span<const std::uint64_t> points) const override {
    validate_points(points);
    const Space& S = *space_;
    const std::uint64_t* p = points.data();
    return S.add(p[0], p[1]) == S.add(p[2], p[3]) || S.add(p[0], p[2]) == S.add(p[1], p[3]) ||
           S.add(p[0], p[3]) == S.add(p[1], p[2]);
  }

  // Same-sum pairs are automatically disjoint, so any two of them form a
  // parallelogram; a 4-set admits one valid pairing in odd characteristic and
  // all three in characteristic 2.
  std::uint64_t compute_count() const override {
    const std::uint64_t N = space_->size();
    if (N > caps_.max_enum_points) fail(Errc::TooLarge, "q^n exceeds the enumeration cap");
    std::vector<std::uint32_t> g(N, 0);
    const Space& S = *space_;
    for (std::uint64_t i = 0; i < N; ++i)
      for (std::uint64_t j = i + 1; j < N; ++j) ++g[S.add(i, j)];
    std::uint64_t total = 0;
    for (auto c : g) total += static_cast<std::uint64_t>(c) * (c - 1) / 2;
    return char2_ ? total / 3 : total;
  }

  std::uint64_t count_in(const SampleSet& e) const override {
    auto mem = e.members();
    const Space& S = *space_;
    std::unordered_map<std::uint64_t, std::uint32_t> g;
    g.reserve(mem.size() * mem.size() / 2 + 1);
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) ++g[S.add(mem[i], mem[j])];
    std::uint64_t total = 0;
    for (const auto& [s, c] : g) total += static_cast<std::uint64_t>(c) * (c - 1) / 2;
    return char2_ ? total / 3 : total;
  }

  bool contains_any(const SampleSet& e) const override {
    auto mem = e.members();
    const Space& S = *space_;
    std::unordered_map<std::uint64_t, std::uint32_t> g;
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j)
        if (++g[S.add(mem[i], mem[j])] == 2) return true;
    return false;
  }

  bool find_in(const SampleSet& e, Pattern& out) const override {
    auto mem = e.members();
    const Space& S = *space_;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> first;
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        std::uint64_t s = S.add(mem[i], mem[j]);
        auto it = first.find(s);
        if (it != first.end()) {
          out = {it->second.first, it->second.second, mem[i], mem[j]};
          std::sort(out.begin(), out.end());
          return true;
        }
        first.emplace(s, std::make_pair(mem[i], mem[j]));
      }
    return false;
  }

  void collect_in(const SampleSet& e, std::vector<Pattern>& out) const override {
    collect_impl(e, out, caps_.max_pair_census);
  }

 protected:
  std::vector<std::uint64_t> materialize() const override {
    if (structured_count() > caps_.max_patterns) fail(Errc::TooLarge, "family exceeds the pattern cap");
    SampleSet full;
    full.space = space_;
    full.bits = DenseBitset(space_->size());
    for (std::uint64_t i = 0; i < space_->size(); ++i) full.bits.set(i);
    std::vector<Pattern> pats;
    collect_impl(full, pats, ~0ull);
    std::vector<std::uint64_t> flat;
    flat.reserve(pats.size() * 4);
    for (const auto& p : pats) flat.insert(flat.end(), p.begin(), p.end());
    return flat;
  }

 private:
  void collect_impl(const SampleSet& e, std::vector<Pattern>& out, std::uint64_t cap) const {
    out.clear();
    auto mem = e.members();
    const Space& S = *space_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> g;
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j)
        g[S.add(mem[i], mem[j])].emplace_back(mem[i], mem[j]);
    for (const auto& [s, pairs] : g) {
      for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
          Pattern p = {pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second};
          std::sort(p.begin(), p.end());
          if (char2_) {
            // keep only the pairing that couples the two smallest points
            bool min_pairing = (p[0] == pairs[a].first && p[1] == pairs[a].second) ||
                               (p[0] == pairs[b].first && p[1] == pairs[b].second);
            if (!min_pairing) continue;
          }
          out.push_back(std::move(p));
          if (out.size() > cap) fail(Errc::TooLarge, "more contained patterns than the pair-census cap");
        }
    }
    std::sort(out.begin(), out.end());
  }

  bool char2_;
};

// --------------------------------------------------------------------------
// Right triangles
// --------------------------------------------------------------------------

class RightTriangleFamily final : public PatternFamily {
 public:
  RightTriangleFamily(std::shared_ptr<const Space> space, EnumCaps caps)
      : PatternFamily(FamilyKind::RightTriangle, std::move(space), 3, 0, caps) {
    if (space_->n() < 2) fail(Errc::BadParams, "right triangles need n >= 2");
  }

  bool right_at(std::uint64_t v, std::uint64_t x, std::uint64_t y) const {
    const Space& S = *space_;
    return S.dot(S.sub(x, v), S.sub(y, v)) == 0;
  }

  bool is_member(std::span<const std::uint64_t> points) const override {
    validate_points(points);
    return right_at(points[0], points[1], points[2]) || right_at(points[1], points[0], points[2]) ||
           right_at(points[2], points[0], points[1]);
  }

  // Structured count following the two-vectors-then-hyperplane construction:
  // for each ordered (v, x) walk the solutions of z . (x - v) = 0 and count a
  // triangle at its smallest right-angle vertex.
  std::uint64_t compute_count() const override {
    const Space& S = *space_;
    const Field& f = S.field();
    const std::uint64_t N = S.size();
    const std::uint32_t n = S.n();
    const std::uint64_t q = S.q();
    if (N > caps_.max_enum_points) fail(Errc::TooLarge, "q^n exceeds the enumeration cap");
    std::uint64_t hyper = N / q;  // q^(n-1)
    if (N * (N - 1) * hyper > (1ull << 33))
      fail(Errc::TooLarge, "right-triangle census work exceeds the cap");
    std::vector<std::uint64_t> pw(n + 1);
    pw[0] = 1;
    for (std::uint32_t c = 0; c < n; ++c) pw[c + 1] = pw[c] * q;

    std::vector<Field::Elem> w(n), z(n);
    std::uint64_t count = 0;
    for (std::uint64_t v = 0; v < N; ++v) {
      for (std::uint64_t x = 0; x < N; ++x) {
        if (x == v) continue;
        for (std::uint32_t c = 0; c < n; ++c) w[c] = f.sub(S.coord(x, c), S.coord(v, c));
        std::uint32_t pivot = 0;
        for (std::uint32_t c = 0; c < n; ++c)
          if (w[c] != 0) pivot = c;
        Field::Elem winv = f.inv(w[pivot]);
        // walk assignments of the non-pivot coordinates
        std::vector<std::uint32_t> freec;
        for (std::uint32_t c = 0; c < n; ++c)
          if (c != pivot) freec.push_back(c);
        std::fill(z.begin(), z.end(), 0);
        std::vector<std::uint32_t> digit(freec.size(), 0);
        for (;;) {
          Field::Elem acc = 0;
          for (auto c : freec) acc = f.add(acc, f.mul(z[c], w[c]));
          z[pivot] = f.neg(f.mul(winv, acc));
          std::uint64_t zi = 0;
          for (std::uint32_t c = 0; c < n; ++c) zi += static_cast<std::uint64_t>(z[c]) * pw[c];
          std::uint64_t y = S.add(v, zi);
          if (y != v && y > x) {
            bool dup = (x < v && right_at(x, v, y)) || (y < v && right_at(y, v, x));
            if (!dup) ++count;
          }
          // advance odometer
          std::size_t pos = 0;
          while (pos < freec.size()) {
            if (++digit[pos] < q) {
              z[freec[pos]] = static_cast<Field::Elem>(digit[pos]);
              break;
            }
            digit[pos] = 0;
            z[freec[pos]] = 0;
            ++pos;
          }
          if (pos == freec.size()) break;
        }
      }
    }
    return count;
  }

  std::uint64_t count_in(const SampleSet& e) const override {
    auto mem = e.members();
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j)
        for (std::size_t k = j + 1; k < mem.size(); ++k)
          if (right_at(mem[i], mem[j], mem[k]) || right_at(mem[j], mem[i], mem[k]) ||
              right_at(mem[k], mem[i], mem[j]))
            ++count;
    return count;
  }

  bool contains_any(const SampleSet& e) const override {
    auto mem = e.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j)
        for (std::size_t k = j + 1; k < mem.size(); ++k)
          if (right_at(mem[i], mem[j], mem[k]) || right_at(mem[j], mem[i], mem[k]) ||
              right_at(mem[k], mem[i], mem[j]))
            return true;
    return false;
  }

  bool find_in(const SampleSet& e, Pattern& out) const override {
    auto mem = e.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j)
        for (std::size_t k = j + 1; k < mem.size(); ++k)
          if (right_at(mem[i], mem[j], mem[k]) || right_at(mem[j], mem[i], mem[k]) ||
              right_at(mem[k], mem[i], mem[j])) {
            out = {mem[i], mem[j], mem[k]};
            return true;
          }
    return false;
  }

  void collect_in(const SampleSet& e, std::vector<Pattern>& out) const override {
    out.clear();
    auto mem = e.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j)
        for (std::size_t k = j + 1; k < mem.size(); ++k)
          if (right_at(mem[i], mem[j], mem[k]) || right_at(mem[j], mem[i], mem[k]) ||
              right_at(mem[k], mem[i], mem[j])) {
            out.push_back({mem[i], mem[j], mem[k]});
            if (out.size() > caps_.max_pair_census)
              fail(Errc::TooLarge, "more contained patterns than the pair-census cap");
          }
  }

 protected:
  std::vector<std::uint64_t> materialize() const override {
    if (structured_count() > caps_.max_patterns) fail(Errc::TooLarge, "family exceeds the pattern cap");
    const std::uint64_t N = space_->size();
    std::vector<std::uint64_t> flat;
    for (std::uint64_t i = 0; i < N; ++i)
      for (std::uint64_t j = i + 1; j < N; ++j)
        for (std::uint64_t k = j + 1; k < N; ++k)
          if (right_at(i, j, k) || right_at(j, i, k) || right_at(k, i, j)) {
            flat.push_back(i);
            flat.push_back(j);
            flat.push_back(k);
          }
    return flat;
  }
};

// --------------------------------------------------------------------------
// Affine m-planes
// --------------------------------------------------------------------------

class PlaneFamily final : public PatternFamily {
 public:
  PlaneFamily(std::shared_ptr<const Space> space, std::uint32_t m, EnumCaps caps)
      : PatternFamily(FamilyKind::Plane, space, 0, m, caps) {
    const std::uint32_t n = space_->n();
    if (n < 2) fail(Errc::BadParams, "planes need n >= 2");
    if (m < 1 || m > n - 1) fail(Errc::BadParams, "plane dimension m must satisfy 1 <= m <= n-1");
    std::uint64_t a = 1;
    for (std::uint32_t i = 0; i < m; ++i) a *= space_->q();
    arity_ = a;
  }

  bool is_member(std::span<const std::uint64_t> points) const override {
    validate_points(points);
    // a set of exactly q^m points whose affine hull has dimension m is that hull
    return space_->affine_dim(points) == m_;
  }

  std::uint64_t compute_count() const override {
    std::uint64_t g = gaussian_count_saturating(space_->n(), m_, space_->q());
    std::uint64_t cosets = 1;
    for (std::uint32_t i = 0; i < space_->n() - m_; ++i) cosets = sat_mul(cosets, space_->q());
    std::uint64_t total = sat_mul(g, cosets);
    if (total >= (1ull << 62)) fail(Errc::TooLarge, "|A(n,m)| exceeds 64-bit counting range");
    return total;
  }

  std::uint64_t count_in(const SampleSet& e) const override {
    if (e.popcount() < arity_) return 0;
    const auto& flat = flat_patterns();
    const std::size_t a = arity_;
    std::uint64_t count = 0;
    for (std::size_t off = 0; off < flat.size(); off += a) {
      bool in = true;
      for (std::size_t i = 0; i < a; ++i)
        if (!e.test(flat[off + i])) {
          in = false;
          break;
        }
      if (in) ++count;
    }
    return count;
  }

  bool contains_any(const SampleSet& e) const override {
    if (e.popcount() < arity_) return false;
    const auto& flat = flat_patterns();
    const std::size_t a = arity_;
    for (std::size_t off = 0; off < flat.size(); off += a) {
      bool in = true;
      for (std::size_t i = 0; i < a; ++i)
        if (!e.test(flat[off + i])) {
          in = false;
          break;
        }
      if (in) return true;
    }
    return false;
  }

  bool find_in(const SampleSet& e, Pattern& out) const override {
    if (e.popcount() < arity_) return false;
    const auto& flat = flat_patterns();
    const std::size_t a = arity_;
    for (std::size_t off = 0; off < flat.size(); off += a) {
      bool in = true;
      for (std::size_t i = 0; i < a; ++i)
        if (!e.test(flat[off + i])) {
          in = false;
          break;
        }
      if (in) {
        out.assign(flat.begin() + off, flat.begin() + off + a);
        return true;
      }
    }
    return false;
  }

  void collect_in(const SampleSet& e, std::vector<Pattern>& out) const override {
    out.clear();
    if (e.popcount() < arity_) return;
    const auto& flat = flat_patterns();
    const std::size_t a = arity_;
    for (std::size_t off = 0; off < flat.size(); off += a) {
      bool in = true;
      for (std::size_t i = 0; i < a; ++i)
        if (!e.test(flat[off + i])) {
          in = false;
          break;
        }
      if (in) {
        out.emplace_back(flat.begin() + off, flat.begin() + off + a);
        if (out.size() > caps_.max_pair_census)
          fail(Errc::TooLarge, "more contained patterns than the pair-census cap");
      }
    }
    std::sort(out.begin(), out.end());
  }

 protected:
  std::vector<std::uint64_t> materialize() const override {
    std::uint64_t total = structured_count();
    if (total > caps_.max_patterns) fail(Errc::TooLarge, "family exceeds the pattern cap");
    std::vector<Pattern> pats;
    pats.reserve(total);
    enumerate_planes(
        *space_, m_, [&](std::span<const std::uint64_t> plane) { pats.emplace_back(plane.begin(), plane.end()); },
        caps_);
    std::sort(pats.begin(), pats.end());
    std::vector<std::uint64_t> flat;
    flat.reserve(pats.size() * arity_);
    for (const auto& p : pats) flat.insert(flat.end(), p.begin(), p.end());
    return flat;
  }
};

}  // namespace

std::unique_ptr<const PatternFamily> PatternFamily::make(FamilyKind kind,
                                                         std::shared_ptr<const Space> space,
                                                         std::uint32_t m, EnumCaps caps) {
  switch (kind) {
    case FamilyKind::ThreeAp: return std::make_unique<ThreeApFamily>(std::move(space), caps);
    case FamilyKind::Parallelogram:
      return std::make_unique<ParallelogramFamily>(std::move(space), caps);
    case FamilyKind::RightTriangle:
      return std::make_unique<RightTriangleFamily>(std::move(space), caps);
    case FamilyKind::Plane: return std::make_unique<PlaneFamily>(std::move(space), m, caps);
  }
  fail(Errc::BadParams, "unknown family kind");
}

std::uint64_t gaussian_count_saturating(std::uint32_t n, std::uint32_t m, std::uint64_t q) {
  if (m > n) return 0;
  // q-binomial recurrence [i,j] = [i-1,j-1] + q^j [i-1,j]
  std::vector<std::uint64_t> row(n + 1, 0), next(n + 1, 0);
  row[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i) {
    next.assign(n + 1, 0);
    next[0] = 1;
    std::uint64_t qj = 1;
    for (std::uint32_t j = 1; j <= i; ++j) {
      qj = sat_mul(qj, q);
      next[j] = sat_add(row[j - 1], sat_mul(qj, row[j]));
    }
    row = next;
  }
  return row[m];
}

void rref_for_each(const Space& space, std::uint32_t m,
                   const std::function<void(std::span<const std::uint64_t>,
                                            std::span<const std::uint32_t>)>& cb) {
  const std::uint32_t n = space.n();
  const std::uint64_t q = space.q();
  if (m > n) fail(Errc::BadParams, "m > n in subspace enumeration");
  if (m == 0) {
    cb({}, {});
    return;
  }
  std::vector<std::uint32_t> pivots(m);
  for (std::uint32_t i = 0; i < m; ++i) pivots[i] = i;
  std::vector<std::uint64_t> pw(n + 1);
  pw[0] = 1;
  for (std::uint32_t i = 0; i < n; ++i) pw[i + 1] = pw[i] * q;

  for (;;) {
    // free entries: (row, col) with col right of the row pivot, col not a pivot
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
    std::vector<bool> is_piv(n, false);
    for (auto p : pivots) is_piv[p] = true;
    for (std::uint32_t r = 0; r < m; ++r)
      for (std::uint32_t c = pivots[r] + 1; c < n; ++c)
        if (!is_piv[c]) free_pos.emplace_back(r, c);

    std::vector<std::vector<Field::Elem>> rows(m, std::vector<Field::Elem>(n, 0));
    for (std::uint32_t r = 0; r < m; ++r) rows[r][pivots[r]] = 1;
    std::vector<std::uint32_t> digit(free_pos.size(), 0);
    std::vector<std::uint64_t> basis(m);
    for (;;) {
      for (std::uint32_t r = 0; r < m; ++r) {
        std::uint64_t idx = 0;
        for (std::uint32_t c = 0; c < n; ++c) idx += static_cast<std::uint64_t>(rows[r][c]) * pw[c];
        basis[r] = idx;
      }
      cb(basis, pivots);
      std::size_t pos = 0;
      while (pos < free_pos.size()) {
        auto [r, c] = free_pos[pos];
        if (++digit[pos] < q) {
          rows[r][c] = static_cast<Field::Elem>(digit[pos]);
          break;
        }
        digit[pos] = 0;
        rows[r][c] = 0;
        ++pos;
      }
      if (pos == free_pos.size()) break;
    }

    // next pivot combination
    int i = static_cast<int>(m) - 1;
    while (i >= 0 && pivots[i] == n - m + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (std::uint32_t j = i + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

std::uint64_t rref_subspace_count(const Space& space, std::uint32_t m) {
  std::uint64_t count = 0;
  rref_for_each(space, m, [&](std::span<const std::uint64_t>, std::span<const std::uint32_t>) { ++count; });
  return count;
}

void enumerate_planes(const Space& space, std::uint32_t m,
                      const std::function<void(std::span<const std::uint64_t>)>& cb,
                      const EnumCaps& caps) {
  const std::uint32_t n = space.n();
  const std::uint64_t q = space.q();
  if (n < 2 || m < 1 || m > n - 1) fail(Errc::BadParams, "need 1 <= m <= n-1");
  std::uint64_t g = gaussian_count_saturating(n, m, q);
  std::uint64_t cosets = 1;
  for (std::uint32_t i = 0; i < n - m; ++i) cosets = sat_mul(cosets, q);
  if (sat_mul(g, cosets) > caps.max_plane_stream)
    fail(Errc::TooLarge, "|A(n,m)| exceeds the plane enumeration cap");

  std::uint64_t a = 1;
  for (std::uint32_t i = 0; i < m; ++i) a *= q;
  std::vector<std::uint64_t> pw(n + 1);
  pw[0] = 1;
  for (std::uint32_t i = 0; i < n; ++i) pw[i + 1] = pw[i] * q;

  std::vector<std::uint64_t> sub_pts(a), plane(a);
  std::vector<std::uint32_t> tdig(m);
  std::vector<std::uint64_t> scalar_mult(m * q);  // scalar_mult[j*q + t] = index of t * basis[j]
  std::vector<std::uint64_t> suffix(m + 1, 0);    // suffix[j] = sum_{i >= j} t_i basis[i]

  rref_for_each(space, m, [&](std::span<const std::uint64_t> basis, std::span<const std::uint32_t> pivots) {
    // subspace points: coefficient odometer over precomputed scalar multiples
    for (std::uint32_t j = 0; j < m; ++j)
      for (std::uint32_t t = 0; t < q; ++t)
        scalar_mult[j * q + t] = space.scalar_mul(static_cast<Field::Elem>(t), basis[j]);
    std::fill(tdig.begin(), tdig.end(), 0);
    std::fill(suffix.begin(), suffix.end(), 0);
    sub_pts[0] = 0;
    for (std::uint64_t i = 1; i < a; ++i) {
      std::size_t pos = 0;
      while (tdig[pos] == q - 1) {
        tdig[pos] = 0;
        ++pos;
      }
      ++tdig[pos];
      suffix[pos] = space.add(scalar_mult[pos * q + tdig[pos]], suffix[pos + 1]);
      for (std::size_t j = pos; j-- > 0;) suffix[j] = suffix[j + 1];  // lower digits are zero
      sub_pts[i] = suffix[0];
    }

    // canonical coset representatives: zero at the pivot coordinates
    std::vector<std::uint32_t> freec;
    for (std::uint32_t c = 0; c < n; ++c) {
      bool piv = false;
      for (auto p : pivots)
        if (p == c) piv = true;
      if (!piv) freec.push_back(c);
    }
    std::vector<std::uint32_t> rdig(freec.size(), 0);
    std::uint64_t rep = 0;
    for (;;) {
      for (std::uint64_t i = 0; i < a; ++i) plane[i] = space.add(rep, sub_pts[i]);
      std::sort(plane.begin(), plane.end());
      cb(plane);
      std::size_t pos = 0;
      while (pos < freec.size()) {
        if (++rdig[pos] < q) {
          rep += pw[freec[pos]];
          break;
        }
        rep -= static_cast<std::uint64_t>(q - 1) * pw[freec[pos]];
        rdig[pos] = 0;
        ++pos;
      }
      if (pos == freec.size()) break;
    }
  });
}

}  // namespace fqpat
