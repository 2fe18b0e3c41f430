#include "doctest.h"

#include "qcu/errors.hpp"
#include "qcu/rational.hpp"

#include <random>
#include <sstream>

using qcu::BigRational;
using qcu::Rational;

TEST_CASE("parse and print") {
  CHECK(Rational::parse("3").str() == "3");
  CHECK(Rational::parse("-2").str() == "-2");
  CHECK(Rational::parse(" 6/4 ").str() == "3/2");
  CHECK(Rational::parse("+1/-2").str() == "-1/2");
  CHECK(Rational::parse("0/7").is_zero());
  CHECK(Rational::parse("123456789012345678901234567890").str() == "123456789012345678901234567890");
  CHECK_THROWS_AS(Rational::parse(""), qcu::InputError);
  CHECK_THROWS_AS(Rational::parse("1/0"), qcu::InputError);
  CHECK_THROWS_AS(Rational::parse("1.5"), qcu::InputError);
  CHECK_THROWS_AS(Rational::parse("a/b"), qcu::InputError);
  std::ostringstream os;
  os << Rational(-4, 6);
  CHECK(os.str() == "-2/3");
}

TEST_CASE("normalized representation") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, -5) == Rational(0));
  CHECK(Rational(4, 2).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), qcu::DomainError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), qcu::DomainError);
}

TEST_CASE("arithmetic and ordering") {
  const Rational a(1, 3);
  const Rational b(-5, 6);
  CHECK(a + b == Rational(-1, 2));
  CHECK(a - b == Rational(7, 6));
  CHECK(a * b == Rational(-5, 18));
  CHECK(a / b == Rational(-2, 5));
  CHECK(-a == Rational(-1, 3));
  CHECK(b < a);
  CHECK(a > b);
  CHECK(Rational(1, 2) <= Rational(2, 4));
  CHECK(a.to_double() == doctest::Approx(1.0 / 3.0));
  CHECK(b.sign() == -1);
  CHECK(Rational().sign() == 0);
}

TEST_CASE("overflow promotes to unbounded integers") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  const Rational x(big);
  const Rational y = x * x;
  CHECK_FALSE(y.is_compact());
  CHECK(y.to_big() == BigRational(boost::multiprecision::cpp_int(big) * big));
  CHECK((y / x) == x);
  CHECK((y / x).is_compact());
  CHECK((x + x - x) == x);
  const Rational small(1, big);
  CHECK((small * small).to_big() == BigRational(1, boost::multiprecision::cpp_int(big) * big));
  CHECK(Rational(std::numeric_limits<std::int64_t>::min()).str() == "-9223372036854775808");
}

TEST_CASE("random operations agree with BigRational") {
  std::mt19937_64 rng(20240611);
  auto draw = [&]() -> Rational {
    const int shift = static_cast<int>(rng() % 62);
    const std::int64_t num = static_cast<std::int64_t>(rng() >> (shift + 1)) - static_cast<std::int64_t>(rng() >> (shift + 2));
    std::int64_t den = static_cast<std::int64_t>((rng() >> (rng() % 63 + 1)) | 1);
    return Rational(num, den);
  };
  for (int i = 0; i < 20000; ++i) {
    const Rational a = draw();
    const Rational b = draw();
    const BigRational ba = a.to_big();
    const BigRational bb = b.to_big();
    REQUIRE((a + b).to_big() == ba + bb);
    REQUIRE((a - b).to_big() == ba - bb);
    REQUIRE((a * b).to_big() == ba * bb);
    if (!b.is_zero()) REQUIRE((a / b).to_big() == ba / bb);
    REQUIRE(((a < b) == (ba < bb)));
    REQUIRE(((a == b) == (ba == bb)));
  }
}
