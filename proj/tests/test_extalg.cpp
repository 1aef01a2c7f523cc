#include <gtest/gtest.h>

#include "folia/extalg.hpp"

using namespace folia;

namespace {

MultiVector basis_vector(int n, int m, std::vector<std::vector<int>> slots) {
  MultiVector x(n, m, static_cast<int>(slots.size()));
  x.add_term(slots, 1);
  return x;
}

}  // namespace

TEST(MultiVector, NormalizationSigns) {
  MultiVector x(6, 3, 2);
  x.add_term({{2, 1, 3}, {4, 5, 6}}, 1);
  EXPECT_EQ(x.coefficient({{1, 2, 3}, {4, 5, 6}}), -1);
  EXPECT_EQ(x.coefficient({{4, 5, 6}, {1, 2, 3}}), 1);
  x.add_term({{1, 1, 2}, {4, 5, 6}}, 7);
  EXPECT_EQ(x.size(), 1u);
  x.add_term({{1, 2, 3}, {1, 2, 3}}, 7);
  EXPECT_EQ(x.size(), 1u);
  EXPECT_THROW(x.add_term({{1, 2, 7}, {4, 5, 6}}, 1), std::invalid_argument);
  EXPECT_THROW(x.add_term({{1, 2, 3}}, 1), std::invalid_argument);
}

TEST(MultiVector, WedgeIsGradedCommutative) {
  MultiVector a = basis_vector(6, 3, {{1, 2, 3}});
  MultiVector b = basis_vector(6, 3, {{1, 2, 4}});
  EXPECT_EQ(wedge(a, b), wedge(b, a).scaled(-1));
  EXPECT_TRUE(wedge(a, a).is_zero());
  MultiVector ab = wedge(a, b);
  MultiVector c = basis_vector(6, 3, {{4, 5, 6}, {1, 5, 6}});
  EXPECT_EQ(wedge(ab, c), wedge(c, ab));
}

TEST(MultiVector, MultiplicationMap) {
  MultiVector x = basis_vector(6, 3, {{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(multiply_m(x).coefficient({{1, 2, 3, 4, 5, 6}}), 1);
  MultiVector y = basis_vector(6, 3, {{1, 2, 3}, {3, 4, 5}});
  EXPECT_TRUE(multiply_m(y).is_zero());
  EXPECT_THROW(multiply_m(basis_vector(6, 3, {{1, 2, 3}})), std::invalid_argument);
}

TEST(MultiVector, PsiDualMultipliesBackToThree) {
  MultiVector x = basis_vector(6, 3, {{1, 2, 3}, {1, 2, 4}, {1, 5, 6}, {3, 4, 5}});
  EXPECT_EQ(lift_wedge(psi_dual(x)), x.scaled(3));
  EXPECT_EQ(psi_dual(x).size(), 3u);
}

TEST(MultiVector, PsiPartsSumToPsi) {
  MultiVector u = build_hw_vector("w6", 6), w = build_hw_vector("w24", 6);
  auto parts = psi_dual_parts(u, w);
  SymSquare sum = parts[0];
  sum += parts[1].scaled(-1);
  sum += parts[2];
  EXPECT_EQ(sum, psi_dual(wedge(u, w)));
}

TEST(RootOperators, RaiseIndices) {
  MultiVector x = basis_vector(4, 2, {{1, 3}});
  MultiVector y = sl_action(2, 3, x);
  EXPECT_EQ(y.coefficient({{1, 2}}), 1);
  MultiVector z = sl_action(1, 3, basis_vector(4, 2, {{2, 3}}));
  EXPECT_EQ(z.coefficient({{1, 2}}), -1);
  EXPECT_TRUE(sl_action(3, 2, x).is_zero());
  EXPECT_THROW(sl_action(2, 2, x), std::invalid_argument);
  EXPECT_THROW(sl_action(1, 5, x), std::invalid_argument);
}

TEST(HighestWeightVectors, TagsCertify) {
  for (const auto& t : hw_tags()) {
    MultiVector w = build_hw_vector(t.tag, t.min_n);
    ASSERT_FALSE(w.is_zero()) << t.tag;
    EXPECT_EQ(w.outer_degree(), t.outer_degree) << t.tag;
    EXPECT_TRUE(is_highest_weight(w)) << t.tag;
    EXPECT_EQ(sl_weight(w), hw_weight(t.tag, t.min_n)) << t.tag;
  }
  EXPECT_THROW(hw_tag("w99"), std::invalid_argument);
  EXPECT_THROW(build_hw_vector("w48", 7), std::invalid_argument);
}

TEST(HighestWeightVectors, ContactBivector) {
  MultiVector w6 = build_hw_vector("w6", 6);
  EXPECT_EQ(w6.size(), 10u);
  EXPECT_EQ(skew_rank(w6), 20u);
  EXPECT_FALSE(wedge_power(w6, 10).is_zero());
  EXPECT_EQ(multiply_m(w6).coefficient({{1, 2, 3, 4, 5, 6}}), 720);
}

TEST(HighestWeightVectors, XiOfW6Square) {
  MultiVector w6 = build_hw_vector("w6", 6);
  MixedTensor t = xi(psi_dual(wedge(w6, w6)));
  MixedTensor expected(6, 3);
  auto big = static_cast<std::uint32_t>(expected.big_basis().rank(0x3Fu));
  for (const auto& [k, c] : w6.terms()) {
    expected.add(big, static_cast<std::uint32_t>(k[0]) * expected.dim_w() + static_cast<std::uint32_t>(k[1]), 1296 * c);
  }
  EXPECT_EQ(t, expected);
}

TEST(HighestWeightVectors, NonHighestWeightDetected) {
  MultiVector x = basis_vector(6, 3, {{1, 2, 4}, {3, 5, 6}});
  EXPECT_FALSE(is_highest_weight(x));
  MultiVector mixed = basis_vector(6, 3, {{1, 2, 3}, {4, 5, 6}});
  mixed += basis_vector(6, 3, {{1, 2, 4}, {1, 5, 6}});
  EXPECT_THROW(sl_weight(mixed), std::invalid_argument);
}
