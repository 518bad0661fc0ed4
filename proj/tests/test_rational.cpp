#include <limits>

#include "doctest.h"
#include "xdof/error.hpp"
#include "xdof/rational.hpp"

using xdof::Rational;

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(xdof::min_of({Rational(4, 3), Rational(3, 2)}) == Rational(4, 3));
  CHECK(Rational(6 + 0, 2 * 3) == Rational(1));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(2, -4).den() == 2);
  CHECK(Rational(3, 4) * Rational(8, 9) == Rational(2, 3));
  CHECK(Rational(3, 4) / Rational(3, 8) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(7, 3) - Rational(1, 3) == Rational(2));
}

TEST_CASE("rational comparison and extrema") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(xdof::max_of({Rational(16, 3), Rational(5), Rational(11, 2)}) == Rational(11, 2));
  CHECK(xdof::abs(Rational(-5, 7)) == Rational(5, 7));
}

TEST_CASE("rational text round trip") {
  CHECK(Rational(4, 3).str() == "4/3");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational::parse("4/3") == Rational(4, 3));
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), xdof::InvalidInput);
  CHECK_THROWS_AS(Rational::parse("abc"), xdof::InvalidInput);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), xdof::InvalidInput);
  CHECK_THROWS_AS(Rational::parse(""), xdof::InvalidInput);
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(Rational(1, 0), xdof::InvalidInput);
  CHECK_THROWS_AS(Rational(1) / Rational(0), xdof::InvalidInput);
  const Rational big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big * Rational(2), xdof::ArithmeticOverflow);
  CHECK_THROWS_AS(big + Rational(1), xdof::ArithmeticOverflow);
  // Wide intermediates that reduce back into range are fine.
  CHECK(Rational(big.num(), 3) * Rational(3, big.num()) == Rational(1));
  CHECK(Rational(big.num(), 2) + Rational(big.num(), 2) == big);
}
