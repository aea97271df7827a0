#include <doctest.h>

#include "fqpat/field.hpp"

using namespace fqpat;

TEST_SUITE_BEGIN("field");

TEST_CASE("prime and extension construction") {
  Field f5(5);
  CHECK(f5.p() == 5);
  CHECK(f5.k() == 1);
  CHECK(f5.reduction_poly().empty());

  Field f4(4);
  CHECK(f4.p() == 2);
  CHECK(f4.k() == 2);
  // x^2 + x + 1, the only irreducible quadratic over GF(2)
  CHECK(f4.reduction_poly() == std::vector<Field::Elem>{1, 1, 1});

  Field f8(8);
  // x^3 + x + 1 comes before x^3 + x^2 + 1 in the deterministic search order
  CHECK(f8.reduction_poly() == std::vector<Field::Elem>{1, 1, 0, 1});

  CHECK_THROWS_AS(Field(6), Error);
  CHECK_THROWS_AS(Field(12), Error);
  CHECK_THROWS_AS(Field(1), Error);
  try {
    Field f(6);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAPrimePower);
  }
}

TEST_CASE("field axioms, exhaustive for q <= 64") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
    CAPTURE(q);
    Field f(q);
    for (Field::Elem a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Field::Elem b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
      }
    }
    // associativity and distributivity over all triples
    bool ok = true;
    for (Field::Elem a = 0; a < q && ok; ++a)
      for (Field::Elem b = 0; b < q && ok; ++b)
        for (Field::Elem c = 0; c < q && ok; ++c) {
          ok = f.add(f.add(a, b), c) == f.add(a, f.add(b, c)) &&
               f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)) &&
               f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
        }
    CHECK(ok);
  }
}

TEST_CASE("Frobenius: (x+y)^p = x^p + y^p for q <= 64") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
    CAPTURE(q);
    Field f(q);
    bool ok = true;
    for (Field::Elem a = 0; a < q && ok; ++a)
      for (Field::Elem b = 0; b < q && ok; ++b)
        ok = f.pow(f.add(a, b), f.p()) == f.add(f.pow(a, f.p()), f.pow(b, f.p()));
    CHECK(ok);
  }
}

TEST_CASE("on-the-fly arithmetic above the table limit agrees with pow/inv") {
  Field f(1024);  // 2^10, no tables
  CHECK(f.p() == 2);
  CHECK(f.k() == 10);
  for (Field::Elem a : {1u, 2u, 37u, 1001u, 513u}) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.add(a, a) == 0);  // characteristic 2
  }
  Field f3(2187);  // 3^7
  for (Field::Elem a : {1u, 5u, 2186u, 1000u}) CHECK(f3.mul(a, f3.inv(a)) == 1);
}

TEST_CASE("inverse of zero is rejected") {
  Field f(7);
  CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_SUITE_END();
