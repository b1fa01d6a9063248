#include "doctest.h"
#include "pebblekit/rational.hpp"

using namespace pebblekit;

TEST_CASE("rational text form") {
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(Rational(-1, 8)) == "-1/8");
  CHECK(parse_rational("12/25") == Rational(12, 25));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
  CHECK_THROWS(parse_rational("1/2/3"));
}

TEST_CASE("powers of one half") {
  CHECK(pow2_inv(0) == 1);
  CHECK(pow2_inv(3) == Rational(1, 8));
  CHECK(pow2_inv(100) * Rational(mpz_class(1) << 100) == 1);
}
