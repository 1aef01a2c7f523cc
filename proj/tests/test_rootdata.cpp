#include <gtest/gtest.h>

#include <string>

#include "folia/rootdata.hpp"

using namespace folia;

namespace {

std::int64_t weyl_order(const RootSystem& rs) {
  Subdiagram sd = Subdiagram::full(rs);
  return static_cast<std::int64_t>(sd.orbit(sd.rho()).size());
}

}  // namespace

TEST(RootSystem, PositiveRootCounts) {
  const std::pair<const char*, std::size_t> cases[] = {
      {"A1", 1}, {"A7", 28}, {"B4", 16}, {"C5", 25}, {"D6", 30}, {"E6", 36},
      {"E7", 63}, {"E8", 120}, {"F4", 24}, {"G2", 6}, {"A3xA3", 12}};
  for (const auto& [name, count] : cases) {
    EXPECT_EQ(RootSystem::parse(name).positive_roots().size(), count) << name;
  }
}

TEST(RootSystem, WeylGroupOrders) {
  EXPECT_EQ(weyl_order(RootSystem::parse("A3")), 24);
  EXPECT_EQ(weyl_order(RootSystem::parse("B3")), 48);
  EXPECT_EQ(weyl_order(RootSystem::parse("G2")), 12);
  EXPECT_EQ(weyl_order(RootSystem::parse("F4")), 1152);
  EXPECT_EQ(weyl_order(RootSystem::parse("D4")), 192);
}

TEST(RootSystem, CartanMatricesFollowBourbaki) {
  RootSystem b3 = RootSystem::parse("B3"), c3 = RootSystem::parse("C3");
  EXPECT_EQ(b3.cartan(1, 2), -1);
  EXPECT_EQ(b3.cartan(2, 1), -2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(b3.cartan(i, j), c3.cartan(j, i));
  }
  EXPECT_EQ(weyl_dim(b3, Weight{0, 0, 1}), 8);
  EXPECT_EQ(weyl_dim(c3, Weight{1, 0, 0}), 6);
  RootSystem e6 = RootSystem::parse("E6");
  EXPECT_EQ(e6.cartan(1, 3), -1);
  EXPECT_EQ(e6.cartan(0, 2), -1);
  EXPECT_EQ(e6.cartan(3, 4), -1);
  EXPECT_EQ(e6.cartan(0, 1), 0);
}

TEST(RootSystem, FundamentalDimensions) {
  const std::tuple<const char*, int, std::int64_t> cases[] = {
      {"E6", 1, 27}, {"E6", 2, 78}, {"E7", 7, 56}, {"E7", 1, 133}, {"E8", 8, 248}, {"E8", 1, 3875},
      {"F4", 4, 26}, {"F4", 1, 52}, {"G2", 1, 7}, {"G2", 2, 14}, {"B4", 4, 16}, {"D5", 5, 16},
      {"C4", 2, 27}, {"A12", 3, 286}};
  for (const auto& [name, node, dim] : cases) {
    RootSystem rs = RootSystem::parse(name);
    EXPECT_EQ(weyl_dim(rs, Weight::fundamental(rs.rank(), node - 1)), dim) << name << " l" << node;
  }
}

TEST(RootSystem, HighestRootIsAdjoint) {
  const std::pair<const char*, std::int64_t> cases[] = {{"A4", 24}, {"B3", 21}, {"C3", 21}, {"D5", 45},
                                                         {"E6", 78}, {"E7", 133}, {"G2", 14}};
  for (const auto& [name, dim] : cases) {
    RootSystem rs = RootSystem::parse(name);
    ASSERT_EQ(rs.highest_roots().size(), 1u);
    EXPECT_EQ(weyl_dim(rs, rs.highest_roots().front()), dim) << name;
  }
}

TEST(RootSystem, ProductsAndParsing) {
  RootSystem p = RootSystem::parse("A3xA3");
  EXPECT_EQ(p.rank(), 6);
  EXPECT_EQ(p.components().size(), 2u);
  EXPECT_EQ(p.name(), "A3xA3");
  EXPECT_EQ(weyl_dim(p, Weight{1, 0, 0, 1, 0, 0}), 16);
  EXPECT_THROW(RootSystem::parse("X3"), std::invalid_argument);
  EXPECT_THROW(RootSystem::parse("D2"), std::invalid_argument);
  EXPECT_THROW(RootSystem::parse("E9"), std::invalid_argument);
  EXPECT_THROW(RootSystem::parse("A"), std::invalid_argument);
  EXPECT_THROW(RootSystem::parse("A9xA9"), std::invalid_argument);
}

TEST(RootSystem, SymmetricPairing) {
  RootSystem rs = RootSystem::parse("B3");
  Weight a{1, 0, 1}, b{0, 2, 1};
  EXPECT_EQ(pairing(rs, a, b), pairing(rs, b, a));
  EXPECT_GT(pairing(rs, a, a), 0);
}

TEST(Cominuscule, Classification) {
  EXPECT_TRUE(is_cominuscule(RootSystem::parse("A5"), 2));
  EXPECT_TRUE(is_cominuscule(RootSystem::parse("B4"), 0));
  EXPECT_FALSE(is_cominuscule(RootSystem::parse("B4"), 3));
  EXPECT_TRUE(is_cominuscule(RootSystem::parse("C4"), 3));
  EXPECT_FALSE(is_cominuscule(RootSystem::parse("C4"), 0));
  EXPECT_TRUE(is_cominuscule(RootSystem::parse("E7"), 6));
  for (int k = 0; k < 8; ++k) EXPECT_FALSE(is_cominuscule(RootSystem::parse("E8"), k));
  EXPECT_THROW(cotangent_weight(RootSystem::parse("E8"), 0), NotCominuscule);
}

TEST(Cominuscule, CotangentWeightAndC1) {
  RootSystem a7 = RootSystem::parse("A7");
  for (int k = 0; k < 7; ++k) {
    Weight expected = -2 * Weight::fundamental(7, k);
    if (k > 0) expected += Weight::fundamental(7, k - 1);
    if (k < 6) expected += Weight::fundamental(7, k + 1);
    EXPECT_EQ(cotangent_weight(a7, k), expected) << k;
    EXPECT_EQ(c1_irreducible(a7, k, cotangent_weight(a7, k)), -8) << k;
  }
  EXPECT_EQ(c1_irreducible(RootSystem::parse("B4"), 0, cotangent_weight(RootSystem::parse("B4"), 0)), -7);
  EXPECT_EQ(c1_irreducible(RootSystem::parse("C4"), 3, cotangent_weight(RootSystem::parse("C4"), 3)), -5);
  EXPECT_EQ(c1_irreducible(RootSystem::parse("D5"), 4, cotangent_weight(RootSystem::parse("D5"), 4)), -8);
  EXPECT_EQ(c1_irreducible(RootSystem::parse("E6"), 0, cotangent_weight(RootSystem::parse("E6"), 0)), -12);
  EXPECT_EQ(c1_irreducible(RootSystem::parse("E7"), 6, cotangent_weight(RootSystem::parse("E7"), 6)), -18);
}

TEST(Cominuscule, ProjectiveSpaceCotangent) {
  RootSystem a4 = RootSystem::parse("A4");
  EXPECT_EQ(cotangent_weight(a4, 0), (Weight{-2, 1, 0, 0}));
  IrrDecomposition h0 = bbw_h0(a4, Weight{2, 0, 0, 0}, 0);
  EXPECT_EQ(h0.multiplicity(Weight{2, 0, 0, 0}), 1);
}

TEST(Cominuscule, DualLeviWeightIsInvolution) {
  RootSystem d5 = RootSystem::parse("D5");
  for (int k : {0, 4}) {
    Weight mu = cotangent_weight(d5, k);
    Weight levi_part = mu;
    levi_part.set(k, 0);
    EXPECT_EQ(dual_levi_weight(d5, k, dual_levi_weight(d5, k, mu)), levi_part);
  }
}

TEST(Cominuscule, LeviSubsystem) {
  RootSystem e7 = RootSystem::parse("E7");
  RootSystem l = levi_subsystem(e7, 6);
  EXPECT_EQ(l.name(), "E6");
  RootSystem a7 = RootSystem::parse("A7");
  EXPECT_EQ(levi_subsystem(a7, 2).name(), "A2xA4");
}
