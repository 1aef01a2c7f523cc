#include <gtest/gtest.h>

#include <cstdint>
#include <limits>

#include "folia/scalar.hpp"
#include "folia/weight.hpp"

using namespace folia;

TEST(Scalar, CheckedArithmeticThrowsOnOverflow) {
  const auto big = std::numeric_limits<std::int64_t>::max();
  EXPECT_EQ(checked_add(40, 2), 42);
  EXPECT_EQ(checked_mul(-6, 7), -42);
  EXPECT_THROW(checked_add(big, 1), OverflowError);
  EXPECT_THROW(checked_mul(big / 2 + 1, 2), OverflowError);
}

TEST(Scalar, Binomials) {
  EXPECT_EQ(binomial(286, 4), 272963405);
  EXPECT_EQ(binomial(78, 2), 3003);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(20, 10), 184756);
}

TEST(Scalar, Rationals) {
  Rational q = parse_rational("6/-4");
  EXPECT_EQ(q, Rational(-3, 2));
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_EQ(to_int64(parse_rational("12/3")), 4);
  EXPECT_THROW(to_int64(Rational(1, 2)), std::exception);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Weight, ArithmeticAndOrder) {
  Weight a{1, 0, 2}, b{0, 1, -1};
  EXPECT_EQ(a + b, (Weight{1, 1, 1}));
  EXPECT_EQ(a - b, (Weight{1, -1, 3}));
  EXPECT_EQ(2 * b, (Weight{0, 2, -2}));
  EXPECT_EQ(-a, (Weight{-1, 0, -2}));
  EXPECT_TRUE(b < a);
  EXPECT_TRUE((Weight(3)).is_zero());
  EXPECT_EQ(Weight::fundamental(4, 2), (Weight{0, 0, 1, 0}));
  EXPECT_THROW(a + (Weight{1, 2}), std::invalid_argument);
}

TEST(Weight, ParseAndLabel) {
  Weight w = Weight::parse("0,1, 0,2");
  EXPECT_EQ(w, (Weight{0, 1, 0, 2}));
  EXPECT_EQ(w.str(), "0,1,0,2");
  EXPECT_EQ(weight_label(w), "l2+2l4");
  EXPECT_EQ(weight_label(Weight(5)), "0");
  EXPECT_EQ(weight_label(Weight{-1, 0, 1}), "-l1+l3");
  EXPECT_THROW(Weight::parse("1,a"), std::invalid_argument);
  EXPECT_THROW(Weight::parse(""), std::invalid_argument);
  EXPECT_THROW(Weight(Weight::kMaxRank + 1), std::invalid_argument);
}
