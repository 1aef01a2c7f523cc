#include <gtest/gtest.h>

#include <random>

#include "folia/charring.hpp"
#include "folia/decomp.hpp"

using namespace folia;

namespace {

FormalCharacter irr(const RootSystem& rs, const Weight& w) { return freudenthal_character(rs, w); }

}  // namespace

TEST(Freudenthal, MassMatchesWeylDimension) {
  std::mt19937_64 rng(11);
  for (const char* name : {"A4", "B3", "C3", "D4", "G2", "F4", "A2xB2"}) {
    RootSystem rs = RootSystem::parse(name);
    std::uniform_int_distribution<int> coord(0, 2);
    for (int t = 0; t < 4; ++t) {
      Weight w(rs.rank());
      for (int i = 0; i < rs.rank(); ++i) w.set(i, coord(rng));
      EXPECT_EQ(irr(rs, w).mass(), weyl_dim(rs, w)) << name << " " << w.str();
    }
  }
}

TEST(Freudenthal, KnownMultiplicities) {
  RootSystem a2 = RootSystem::parse("A2");
  EXPECT_EQ(irr(a2, Weight{1, 1}).multiplicity(Weight(2)), 2);
  RootSystem g2 = RootSystem::parse("G2");
  EXPECT_EQ(irr(g2, Weight{1, 0}).multiplicity(Weight(2)), 1);
  EXPECT_EQ(irr(g2, Weight{0, 1}).multiplicity(Weight(2)), 2);
  RootSystem e8 = RootSystem::parse("E8");
  EXPECT_EQ(irr(e8, Weight::fundamental(8, 7)).multiplicity(Weight(8)), 8);
}

TEST(Freudenthal, CharacterIsWeylInvariant) {
  RootSystem b3 = RootSystem::parse("B3");
  FormalCharacter ch = irr(b3, Weight{1, 0, 1});
  Subdiagram sd = Subdiagram::full(b3);
  for (const auto& [w, m] : ch.entries) {
    for (int i = 0; i < 3; ++i) EXPECT_EQ(ch.multiplicity(sd.reflect(w, i)), m);
  }
}

TEST(CharacterRing, WedgePowersOfStandardRepresentation) {
  RootSystem a6 = RootSystem::parse("A6");
  FormalCharacter v = irr(a6, Weight::fundamental(6, 0));
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(wedge_power(v, k), irr(a6, Weight::fundamental(6, k - 1))) << k;
  }
  EXPECT_EQ(wedge_power(v, 7), trivial_character(a6));
  EXPECT_EQ(wedge_power(v, 8).mass(), 0);
  EXPECT_EQ(sym_power(v, 3), irr(a6, Weight{3, 0, 0, 0, 0, 0}));
}

TEST(CharacterRing, TensorSquareSplits) {
  RootSystem c3 = RootSystem::parse("C3");
  FormalCharacter v = irr(c3, Weight{0, 1, 0});
  FormalCharacter sq = char_product(v, v);
  FormalCharacter split = sym_power(v, 2);
  split += wedge_power(v, 2);
  EXPECT_EQ(sq, split);
  FormalCharacter adams = sym_power(v, 2);
  adams -= wedge_power(v, 2);
  EXPECT_EQ(adams_operation(v, 2), adams);
}

TEST(CharacterRing, PlethysmAgreesWithPowers) {
  RootSystem a3 = RootSystem::parse("A3");
  FormalCharacter v = irr(a3, Weight{0, 1, 0});
  EXPECT_EQ(schur_plethysm(v, {1, 1}), wedge_power(v, 2));
  EXPECT_EQ(schur_plethysm(v, {2}), sym_power(v, 2));
  EXPECT_EQ(schur_plethysm(v, {1, 1, 1, 1}), wedge_power(v, 4));
  FormalCharacter hook = schur_plethysm(v, {2, 1});
  EXPECT_EQ(2 * hook.mass(), 6 * 6 * 6 - sym_power(v, 3).mass() - wedge_power(v, 3).mass());
  EXPECT_FALSE(hook.is_virtual());
}

TEST(Partitions, EnumerationAndConjugation) {
  EXPECT_EQ(partitions_of(5).size(), 7u);
  EXPECT_EQ(partitions_of(8).size(), 22u);
  EXPECT_EQ(conjugate({3, 1}), (Partition{2, 1, 1}));
  EXPECT_EQ(conjugate({2, 2}), (Partition{2, 2}));
  EXPECT_EQ(sn_dimension({2, 1, 1}), 3);
  EXPECT_EQ(sn_dimension({2, 2}), 2);
}
