#include <gtest/gtest.h>

#include "folia/weight_expr.hpp"

using namespace folia;

TEST(WeightExpr, IntegerTemplates) {
  Vars v{{"n", 13}, {"d", 1}};
  EXPECT_EQ(eval_int("2*d+4", v), 6);
  EXPECT_EQ(eval_int("(n-1)/2", v), 6);
  EXPECT_EQ(substitute("A{n-1}", v), "A12");
  EXPECT_EQ(substitute("l{n-6}+l{n-2}", v), "l7+l11");
  EXPECT_THROW(substitute("l{n", v), std::invalid_argument);
  EXPECT_THROW(eval_int("m+1", v), std::invalid_argument);
}

TEST(WeightExpr, ParsesSums) {
  EXPECT_EQ(*parse_weight_expr("l2+2l4", 5), (Weight{0, 1, 0, 2, 0}));
  EXPECT_EQ(*parse_weight_expr("3*l1 - 2*l3", 3), (Weight{3, 0, -2}));
  EXPECT_EQ(*parse_weight_expr("0", 2), Weight(2));
  EXPECT_EQ(*parse_weight_expr("1,0,1", 3), (Weight{1, 0, 1}));
}

TEST(WeightExpr, IndexConventions) {
  EXPECT_EQ(*parse_weight_expr("l0+l2", 4), (Weight{0, 1, 0, 0}));
  EXPECT_EQ(*parse_weight_expr("l5", 4), Weight(4));
  EXPECT_FALSE(parse_weight_expr("l6+l1", 4).has_value());
  EXPECT_FALSE(parse_weight_expr("l-1", 4).has_value());
  EXPECT_FALSE(eval_weight("l{n-9}", {{"n", 7}}, 6).has_value());
  EXPECT_EQ(*eval_weight("l{n-7}", {{"n", 7}}, 6), Weight(6));
}

TEST(WeightExpr, RejectsGarbage) {
  EXPECT_THROW(parse_weight_expr("", 3), std::invalid_argument);
  EXPECT_THROW(parse_weight_expr("l1l2", 3), std::invalid_argument);
  EXPECT_THROW(parse_weight_expr("2x", 3), std::invalid_argument);
  EXPECT_THROW(parse_weight_expr("1,0", 3), std::invalid_argument);
}
