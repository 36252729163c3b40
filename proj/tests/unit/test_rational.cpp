#include <doctest.h>

#include "divcar/error.hpp"
#include "divcar/rational.hpp"

using divcar::Rational;

TEST_CASE("rational sums of unit fractions stay reduced") {
  Rational r = Rational::unit_fraction(2) + Rational::unit_fraction(3) + Rational::unit_fraction(6);
  CHECK(r == Rational(1, 1));
  CHECK(r.to_string() == "1");
  CHECK((Rational::unit_fraction(4) + Rational::unit_fraction(4)).to_string() == "1/2");
  CHECK(Rational(6, 8) == Rational(3, 4));
}

TEST_CASE("rational ordering is exact") {
  CHECK(Rational::unit_fraction(3) < Rational::unit_fraction(2));
  CHECK(Rational(2, 6) == Rational::unit_fraction(3));
  CHECK(Rational::zero() < Rational::unit_fraction(1000000007));
  // 1/3 + 1/3 + 1/3 is exactly 1; in doubles it is too, but 0.1 * 3 is not.
  Rational tenth(1, 10);
  CHECK(tenth + tenth + tenth == Rational(3, 10));
}

TEST_CASE("rational comparison survives cross-multiplication overflow") {
  // 1/n + 1/(n+1) and 1/(n-1) + 1/(n+2) share the numerator 2n+1 and have
  // denominators near 2^122, so cross multiplication does not fit.
  const std::uint64_t n = std::uint64_t{1} << 61;
  const Rational a = Rational::unit_fraction(n) + Rational::unit_fraction(n + 1);
  const Rational b = Rational::unit_fraction(n - 1) + Rational::unit_fraction(n + 2);
  CHECK(a < b);
  CHECK(b > a);
  CHECK(a == Rational::unit_fraction(n + 1) + Rational::unit_fraction(n));
  CHECK_THROWS_AS(a + Rational::unit_fraction(n + 5), divcar::InternalError);
}

TEST_CASE("rational rejects zero denominators and zero reciprocals") {
  CHECK_THROWS_AS(Rational(1, 0), divcar::InternalError);
  CHECK_THROWS_AS((void)Rational::zero().reciprocal(), divcar::InternalError);
  CHECK(Rational(3, 4).reciprocal() == Rational(4, 3));
}

TEST_CASE("rational to_double") {
  CHECK(Rational(1, 4).to_double() == 0.25);
  CHECK(Rational::zero().to_double() == 0.0);
}
