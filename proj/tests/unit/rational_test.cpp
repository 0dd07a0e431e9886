#include "selfsim/rational.hpp"

#include <stdexcept>

#include <gtest/gtest.h>

#include "generators.hpp"

namespace selfsim {
namespace {

TEST(ParseRational, FractionsAreCanonical) {
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("3/-6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
}

TEST(ParseRational, DecimalsConvertExactly) {
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_rational("1E2"), Rational(100));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
}

TEST(ParseRational, RejectsMalformedInput) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1e"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
}

TEST(ToString, RoundTripsThroughParse) {
  testing::RationalGen gen;
  for (int k = 0; k < 200; ++k) {
    const Rational r = gen.any(1000, 997);
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
  EXPECT_EQ(to_string(Rational(-1, 27)), "-1/27");
  EXPECT_EQ(to_string(Rational(3)), "3");
}

TEST(ToRational, IsExactForBinaryValues) {
  EXPECT_EQ(to_rational(Real("0.375")), Rational(3, 8));
  EXPECT_EQ(to_rational(Real(-12)), Rational(-12));
  EXPECT_EQ(to_rational(Real(0)), Rational(0));
  const Real third = Real(1) / 3;
  EXPECT_LT(abs(to_real(to_rational(third)) - third), Real("1e-60"));
}

}  // namespace
}  // namespace selfsim
