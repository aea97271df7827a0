#include <doctest.h>

#include "fqpat/sampler.hpp"
#include "fqpat/space.hpp"

using namespace fqpat;

TEST_SUITE_BEGIN("space");

TEST_CASE("index encoding is a bijection") {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 6}, {5, 6}, {2, 16}, {7, 3}}) {
    CAPTURE(q);
    CAPTURE(n);
    auto s = make_space(make_field(q), n);
    bool ok = true;
    for (std::uint64_t i = 0; i < s->size() && ok; ++i) ok = s->index_of(s->vec_of(i)) == i;
    CHECK(ok);
  }
}

TEST_CASE("vector operation examples") {
  auto f3 = make_field(3);
  Space s3(f3, 2);
  Vec a{{1, 2}}, b{{2, 1}};
  CHECK(s3.vec_add(a, b) == Vec{{0, 0}});
  CHECK(s3.vec_scalar_mul(2, Vec{{1, 1}}) == Vec{{2, 2}});

  Space s2(make_field(2), 2);
  CHECK(s2.vec_sub(Vec{{1, 0}}, Vec{{0, 1}}) == Vec{{1, 1}});

  CHECK(s3.vec_dot(Vec{{1, 0}}, Vec{{0, 1}}) == 0);
  CHECK(s2.vec_dot(Vec{{1, 1}}, Vec{{1, 1}}) == 0);  // isotropic in characteristic 2
  CHECK(s3.vec_dot(Vec{{1, 2}}, Vec{{2, 2}}) == 0);  // 2 + 4 = 0 mod 3

  CHECK_THROWS_AS(s3.vec_add(a, Vec{{1, 2, 0}}), Error);
}

TEST_CASE("rank") {
  Space s(make_field(3), 2);
  CHECK(s.rank_vecs({Vec{{1, 0}}, Vec{{0, 1}}}) == 2);
  CHECK(s.rank_vecs({Vec{{1, 1}}, Vec{{2, 2}}}) == 1);
  CHECK(s.rank_vecs({Vec{{0, 0}}}) == 0);
  CHECK_THROWS_AS(s.rank_vecs({}), Error);
}

TEST_CASE("affine dimension") {
  auto s = make_space(make_field(3), 2);
  auto idx = [&](std::uint32_t a, std::uint32_t b) { return s->index_of(Vec{{a, b}}); };
  CHECK(s->affine_dim(std::vector<std::uint64_t>{idx(1, 2)}) == 0);
  CHECK(s->affine_dim(std::vector<std::uint64_t>{idx(0, 0), idx(1, 0), idx(0, 1)}) == 2);
  CHECK(s->affine_dim(std::vector<std::uint64_t>{idx(0, 0), idx(1, 1), idx(2, 2)}) == 1);
  CHECK_THROWS_AS(s->affine_dim(std::vector<std::uint64_t>{}), Error);
}

TEST_CASE("affine dimension is translation invariant and bounded") {
  auto s = make_space(make_field(5), 3);
  rng::CounterRng r(99, 7, 0);
  std::uint64_t ctr = 0;
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t sz = 1 + r.at(ctr++) % 6;
    std::vector<std::uint64_t> pts;
    while (pts.size() < sz) {
      std::uint64_t p = r.at(ctr++) % s->size();
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    std::uint64_t w = r.at(ctr++) % s->size();
    std::vector<std::uint64_t> shifted;
    for (auto p : pts) shifted.push_back(s->add(p, w));
    std::uint32_t d = s->affine_dim(pts);
    CHECK(d == s->affine_dim(shifted));
    CHECK(d <= std::min<std::uint64_t>(pts.size() - 1, s->n()));
  }
}

TEST_CASE("space cap") {
  CHECK_THROWS_AS(Space(make_field(2), 30), Error);  // 2^30 over the default cap
  try {
    Space s(make_field(2), 30);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
}

TEST_SUITE_END();
