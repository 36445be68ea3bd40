#include "chaincycle/rational.hpp"
#include "doctest.h"

using chaincycle::Rational;

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(3, 2) * Rational(2, 3)) == Rational(1));
  CHECK((Rational(1) / Rational(3)) == Rational(1, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 2).str() == "7/2");
  CHECK(Rational(4, 2).str() == "2");
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("1.5") == Rational(3, 2));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("-2.5") == Rational(-5, 2));
  CHECK(Rational::parse("2.0") == Rational(2));
  CHECK_THROWS(Rational::parse("x"));
  CHECK_THROWS(Rational::parse("1/0"));
}
