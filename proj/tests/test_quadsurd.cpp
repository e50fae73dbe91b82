#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "markovdim/interval.hpp"
#include "markovdim/quadsurd.hpp"

using namespace markovdim;

TEST_CASE("normal form extracts square factors and common divisors") {
  // 120 = 4 * 30, then gcd(0, 8, 14) = 2.
  QuadSurd x(0, 4, 120, 14);
  CHECK(x.p() == 0);
  CHECK(x.q() == 4);
  CHECK(x.d() == 30);
  CHECK(x.r() == 7);

  // d = 1 folds into the rational part.
  QuadSurd y(1, 2, 1, 1);
  CHECK(y.is_rational());
  CHECK(y == QuadSurd(3));

  // q = 0 forgets the radicand.
  QuadSurd z(5, 0, 30, 10);
  CHECK(z.is_rational());
  CHECK(z == QuadSurd(mpq_class(1, 2)));

  CHECK_THROWS(QuadSurd(1, 1, 2, 0));   // zero denominator
  CHECK_THROWS(QuadSurd(1, 1, -2, 1));  // negative radicand
}

TEST_CASE("addition, negation, reciprocal, shift, scale") {
  CHECK(QuadSurd(1) + QuadSurd(2) == QuadSurd(3));

  QuadSurd s2 = QuadSurd::sqrt_of(2);
  CHECK(s2.reciprocal() == QuadSurd(0, 1, 2, 2));  // 1/sqrt(2) = sqrt(2)/2
  CHECK(s2.reciprocal().reciprocal() == s2);
  CHECK(s2 + (-s2) == QuadSurd(0));
  CHECK(s2.shifted(3) - QuadSurd(3) == s2);
  CHECK(s2.scaled(mpq_class(3, 2)) == QuadSurd(0, 3, 2, 2));

  // Mixed radicands are rejected in addition but fine when one side is
  // rational.
  CHECK_THROWS(s2 + QuadSurd::sqrt_of(3));
  CHECK(QuadSurd(1) + s2 == QuadSurd(1, 1, 2, 1));
}

TEST_CASE("exact comparison across radicands") {
  QuadSurd a = QuadSurd(0, 4, 30, 7);  // 4*sqrt(30)/7 = 3.1298...
  QuadSurd b = QuadSurd::sqrt_of(10);  // 3.1622...
  CHECK(b > a);
  CHECK(a < b);
  CHECK(a == a);
  CHECK(QuadSurd::sqrt_of(2) < QuadSurd::sqrt_of(3));
  // sqrt(85)/3 = 3.0731... < sqrt(10)
  CHECK(QuadSurd(0, 1, 85, 3) < b);
  // Equal values through different constructor inputs.
  CHECK(QuadSurd(0, 1, 45, 3) == QuadSurd(0, 1, 5, 1));
}

TEST_CASE("sign of a + b*sqrt(D1) + c*sqrt(D2)") {
  CHECK(QuadSurd::sign_two_radical(1, 1, 2, -1, 3) > 0);   // 1+1.41-1.73
  CHECK(QuadSurd::sign_two_radical(-4, 1, 2, 1, 3) < 0);   // -4+1.41+1.73
  CHECK(QuadSurd::sign_two_radical(0, 1, 2, -1, 2) == 0);  // sqrt2 - sqrt2
  CHECK(QuadSurd::sign_two_radical(-3, 1, 2, 1, 3) > 0);   // 0.146
  CHECK(QuadSurd::sign_one_radical(-1, 1, 2) > 0);
  CHECK(QuadSurd::sign_one_radical(3, -2, 2) > 0);  // 3 - 2.82
  CHECK(QuadSurd::sign_one_radical(2, -1, 4) == 0);
}

TEST_CASE("floor_scaled and truncated decimals") {
  QuadSurd s2 = QuadSurd::sqrt_of(2);
  CHECK(s2.floor_scaled(100) == 141);
  CHECK((-s2).floor_scaled(100) == -142);
  CHECK(QuadSurd(mpq_class(1, 4)).floor_scaled(100) == 25);

  QuadSurd a = QuadSurd(0, 4, 30, 7);
  CHECK(a.decimal(10) == "3.1298431857");
  CHECK(a.decimal(4) == "3.1298");  // truncated, never rounded to ...99
  CHECK(a.decimal(0) == "3");
  CHECK(QuadSurd::sqrt_of(10).decimal(8) == "3.16227766");
  CHECK((-a).decimal(4) == "-3.1298");
}

TEST_CASE("difference across radicands") {
  QuadSurd s2 = QuadSurd::sqrt_of(2), s3 = QuadSurd::sqrt_of(3);
  // sqrt(3) - sqrt(2) = 0.31783724...
  CHECK(difference_floor_scaled(s2, s3, 1000000) == 317837);
  CHECK(difference_decimal(s2, s3, 6) == "0.317837");
  CHECK(difference_floor_scaled(s2, s2, 1000000) == 0);
  CHECK_THROWS(difference_floor_scaled(s3, s2, 10));

  // Large scale stays exact.
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 20);
  mpz_class f = difference_floor_scaled(s2, s3, big);
  CHECK(f == mpz_class("31783724519578224472"));
}

TEST_CASE("decimal parsing round-trips") {
  CHECK(parse_decimal("3.2658") == mpq_class(16329, 5000));
  CHECK(parse_decimal("-0.5") == mpq_class(-1, 2));
  CHECK(parse_decimal("3") == 3);
  CHECK_THROWS(parse_decimal("3.26a"));
  CHECK(decimal_of_rational(mpq_class(16329, 5000), 4) == "3.2658");
  CHECK(decimal_of_rational(mpq_class(1, 3), 5) == "0.33333");
}

TEST_CASE("interval arithmetic is outward") {
  Interval third = Interval::point(1.0) / Interval::point(3.0);
  CHECK(third.lo < third.hi);
  CHECK(third.lo <= 1.0 / 3.0);
  CHECK(third.hi >= 1.0 / 3.0);

  Interval r2 = sqrt_outward(Interval::point(2.0));
  CHECK(r2.lo <= 1.4142135623730950);
  CHECK(r2.hi >= 1.4142135623730951);

  Interval p = pow_outward(Interval{0.25, 0.5}, 0.7);
  CHECK(p.lo < std::pow(0.25, 0.7));
  CHECK(p.hi > std::pow(0.5, 0.7));

  Interval sum = Interval{1.0, 2.0} + Interval{-0.5, 0.25};
  CHECK(sum.lo <= 0.5);
  CHECK(sum.hi >= 2.25);

  // to_interval encloses the exact value.
  QuadSurd a = QuadSurd(0, 4, 30, 7);
  Interval ai = a.to_interval();
  CHECK(QuadSurd(mpq_class(ai.lo)) <= a);
  CHECK(QuadSurd(mpq_class(ai.hi)) >= a);
}
