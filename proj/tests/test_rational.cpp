#include <doctest.h>

#include <stdexcept>

#include "sbeauty/rational.hpp"

using sbeauty::Rational;

TEST_CASE("rational reduces to lowest terms with positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(6, 3).num() == 2);
  CHECK(Rational(6, 3).den() == 1);
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 3) == Rational(3, 2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(3 * Rational(1, 6) == Rational(1, 2));

  Rational half(1, 2);
  half += Rational(1, 6);
  CHECK(half == Rational(2, 3));
}

TEST_CASE("rational comparisons use cross multiplication, not doubles") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 3) > Rational(1, 2));
  CHECK(Rational(1, 2) <= Rational(2, 4));
  CHECK(Rational(1, 2) >= Rational(2, 4));
  // Distinct but closer than double epsilon when scaled.
  CHECK(Rational(1000000000000000001, 3) > Rational(1000000000000000000, 3));
}

TEST_CASE("rational guards division by zero and overflow") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
  Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  // 128-bit intermediates keep legitimate results alive.
  CHECK(Rational(INT64_MAX, 2) * Rational(2, INT64_MAX) == Rational(1));
}

TEST_CASE("rational string round trip") {
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-5, 3).str() == "-5/3");
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(0).str() == "0");
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-5/3") == Rational(-5, 3));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("+3/9") == Rational(1, 3));
  CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational to_double is only a view") {
  CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}
