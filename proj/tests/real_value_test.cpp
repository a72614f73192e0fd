#include <cmath>
#include <random>

#include "doctest.h"

#include "essval/errors.hpp"
#include "essval/parse.hpp"
#include "essval/real_value.hpp"
#include "support.hpp"

using namespace essval;
using essval::testing::golden;
using essval::testing::rat;

TEST_CASE("nearest_integer") {
  CHECK(nearest_integer(RealValue(0)) == 0);
  CHECK(nearest_integer(golden()) == 1);
  CHECK(nearest_integer(rat(7, 3)) == 2);
  // Ties go to the even neighbour.
  CHECK(nearest_integer(rat(1, 2)) == 0);
  CHECK(nearest_integer(rat(3, 2)) == 2);
  CHECK(nearest_integer(rat(-5, 2)) == -2);
}

TEST_CASE("distance_to_integers") {
  CHECK(distance_to_integers(RealValue(0)) == RealValue(0));
  CHECK(distance_to_integers(rat(7, 3)) == rat(1, 3));
  CHECK(distance_to_integers(golden()) == RealValue::surd(3, -1, 5, 2));
}

TEST_CASE("reduce_mod_1") {
  CHECK(reduce_mod_1(rat(-1, 3)).value() == rat(2, 3));
  CHECK(reduce_mod_1(golden()).value() == golden());
  CHECK(reduce_mod_1(RealValue::surd(-1, -1, 5, 2)).value() == RealValue::surd(3, -1, 5, 2));
}

TEST_CASE("compare") {
  CHECK(compare(rat(1, 2), golden()) == std::strong_ordering::less);
  CHECK(compare(golden(), golden()) == std::strong_ordering::equal);
  CHECK(compare(rat(2, 3), rat(1, 2)) == std::strong_ordering::greater);
  CHECK_THROWS_AS(compare(golden(), RealValue::surd(0, 1, 2, 1)), IncomparableRepresentations);
  // A rational compares with any field.
  CHECK(compare(RealValue::surd(0, 1, 2, 1), rat(7, 5)) == std::strong_ordering::greater);
}

TEST_CASE("canonical form") {
  const RealValue x = RealValue::surd(2, 4, 20, 6);  // (2 + 4*2*sqrt(5))/6 = (1 + 4 sqrt5)/3
  CHECK(x.a() == 1);
  CHECK(x.b() == 4);
  CHECK(x.c() == 3);
  CHECK(x.d() == 5);
  CHECK(RealValue::surd(1, 3, 9, 2) == RealValue(5));
  CHECK(RealValue::surd(0, 0, 7, 3).is_zero());
  CHECK(RealValue::surd(-1, 1, 5, 2).to_string() == "(-1+1*sqrt(5))/2");
  CHECK(rat(6, -4).to_string() == "-3/2");
}

TEST_CASE("floor and decimal rendering") {
  CHECK(RealValue::surd(-1, -1, 5, 2).floor() == -2);
  CHECK(RealValue::surd(0, 1, 2, 1).floor() == 1);
  CHECK(RealValue::surd(0, -1, 2, 1).ceil() == -1);
  CHECK(golden().to_decimal(10) == "0.6180339887");
  CHECK(rat(-1, 3).to_decimal(5) == "-0.33333");
}

TEST_CASE("property: order agrees with high-precision approximation away from ties") {
  std::mt19937_64 rng(11);
  for (std::int64_t d : {2, 3, 5, 13}) {
    for (int i = 0; i < 2000; ++i) {
      const RealValue x = essval::testing::random_surd(rng, d);
      const RealValue y = essval::testing::random_surd(rng, d);
      const long double dx = std::stold(x.to_decimal(30));
      const long double dy = std::stold(y.to_decimal(30));
      if (std::fabs(static_cast<double>(dx - dy)) > 1e-12) {
        CHECK((x < y) == (dx < dy));
      }
      // Antisymmetry and consistency with subtraction.
      CHECK((x <=> y) == (0 <=> (y - x).sign()));
      CHECK(((x <=> y) == std::strong_ordering::less) == ((y <=> x) == std::strong_ordering::greater));
    }
  }
}

TEST_CASE("property: transitivity") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 3000; ++i) {
    const RealValue x = essval::testing::random_surd(rng, 5, 20);
    const RealValue y = essval::testing::random_surd(rng, 5, 20);
    const RealValue z = essval::testing::random_surd(rng, 5, 20);
    if (x <= y && y <= z) {
      CHECK(x <= z);
    }
  }
}

TEST_CASE("property: circle norm and reduction") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> shift(-1000, 1000);
  const RealValue half = rat(1, 2);
  for (int i = 0; i < 3000; ++i) {
    const RealValue x = essval::testing::random_surd(rng, 2);
    const RealValue n = distance_to_integers(x);
    CHECK(n.sign() >= 0);
    CHECK(n <= half);
    CHECK(n == distance_to_integers(-x));
    CHECK(RealValue(2) * n >= distance_to_integers(RealValue(2) * x));
    const RealValue k(shift(rng));
    CHECK(reduce_mod_1(x + k) == reduce_mod_1(x));
    const CirclePoint p = reduce_mod_1(x);
    CHECK(p.value().sign() >= 0);
    CHECK(p.value() < RealValue(1));
    CHECK(RealValue(x.floor()) <= x);
    CHECK(x < RealValue(x.floor() + 1));
  }
}

TEST_CASE("property: field arithmetic round trips") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 2000; ++i) {
    const RealValue x = essval::testing::random_surd(rng, 13);
    const RealValue y = essval::testing::random_surd(rng, 13);
    CHECK((x + y) - y == x);
    if (!y.is_zero()) {
      CHECK((x / y) * y == x);
    }
    CHECK(parse_real(x.to_string()).value == x);
  }
}

TEST_CASE("circle point arithmetic wraps") {
  const CirclePoint a(rat(3, 4));
  const CirclePoint b(rat(1, 2));
  CHECK((a + b).value() == rat(1, 4));
  CHECK((b - a).value() == rat(3, 4));
}

TEST_CASE("parse_real") {
  CHECK(parse_real("7/3").value == rat(7, 3));
  CHECK(parse_real("(-1+1*sqrt(5))/2").value == golden());
  CHECK(parse_real("sqrt(2)-1").value == RealValue::surd(-1, 1, 2, 1));
  CHECK(parse_real("sqrt(8)").value == RealValue::surd(0, 2, 2, 1));
  CHECK(parse_real("sqrt(1/2)").value == RealValue::surd(0, 1, 2, 2));
  CHECK(parse_real("2sqrt(5)").value == RealValue::surd(0, 2, 5, 1));
  CHECK(parse_real("0.25").value == rat(1, 4));
  CHECK(parse_real("-(1/3)").value == rat(-1, 3));
  CHECK(parse_real("3a", golden()).value == RealValue(3) * golden());
  CHECK(parse_real("1/2+2a", golden()).value == rat(1, 2) + RealValue(2) * golden());
  CHECK(parse_real("-5a", golden()).value == RealValue(-5) * golden());
  const ParsedValue pi = parse_real("pi-3");
  CHECK(pi.approximate);
  CHECK(pi.value.is_rational());
  CHECK(pi.value.to_decimal(10) == "0.1415926535");
  CHECK_THROWS_AS(parse_real("abc"), ParseError);
  CHECK_THROWS_AS(parse_real("3a"), ParseError);
  CHECK_THROWS_AS(parse_real("1/0"), ParseError);
  CHECK_THROWS_AS(parse_real("sqrt(-2)"), ParseError);
  CHECK_THROWS_AS(parse_real("(1+2"), ParseError);
  CHECK_THROWS_AS(parse_real("sqrt(2)+sqrt(3)"), ParseError);
}
