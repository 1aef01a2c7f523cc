#include <gtest/gtest.h>

#include <random>

#include "folia/linalg.hpp"
#include "folia/pencil.hpp"

using namespace folia;

namespace {

std::vector<Rational> vals(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(LinearAlgebra, RankKernelSolveDeterminant) {
  Matrix a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(matrix_rank(a), 2u);
  EXPECT_EQ(determinant(a), 0);
  auto ker = kernel_basis(a, 3);
  ASSERT_EQ(ker.size(), 1u);
  for (const auto& row : a) {
    Rational s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += row[j] * ker[0][j];
    EXPECT_EQ(s, 0);
  }
  Matrix b{{2, 1}, {1, 1}};
  EXPECT_EQ(determinant(b), 1);
  auto x = solve(b, {3, 2}, 2);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 1);
  EXPECT_EQ((*x)[1], 1);
  EXPECT_FALSE(solve(Matrix{{1, 1}, {1, 1}}, {1, 2}, 2).has_value());
}

TEST(Pencil, CanonicalFormShape) {
  SkewPencil p = build_canonical_pencil({2, 1}, vals({5, 7}));
  EXPECT_EQ(p.dim(), 6);
  EXPECT_NE(determinant(p.b), 0);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(p.a[i][j], -p.a[j][i]);
  }
  EXPECT_THROW(build_canonical_pencil({1, 2}, vals({1, 1})), std::invalid_argument);
  EXPECT_THROW(build_canonical_pencil({2}, vals({1, 1})), std::invalid_argument);
}

TEST(Pencil, DivisionWhenValuesCoincide) {
  Lemma56Report r = verify_lemma56({1, 1, 1, 1}, vals({2, 2, 2, 9}));
  EXPECT_TRUE(r.divides);
  EXPECT_TRUE(r.solvable);
  ASSERT_TRUE(r.a.has_value());
  EXPECT_EQ(*r.a, 2);
  EXPECT_TRUE(r.ok);
  Lemma56Report s = verify_lemma56({2, 1, 1}, vals({3, 3, 3}));
  EXPECT_TRUE(s.divides);
  EXPECT_TRUE(s.ok);
}

TEST(Pencil, ObstructionWithWitness) {
  for (auto part : std::vector<std::vector<int>>{{1, 1, 1, 1}, {3, 1}, {2, 2}, {4}}) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < part.size(); ++i) v.push_back(static_cast<long>(i + 1));
    Lemma56Report r = verify_lemma56(part, v);
    EXPECT_FALSE(r.divides);
    EXPECT_FALSE(r.solvable);
    ASSERT_FALSE(r.witness.empty());
    EXPECT_NE(r.witness_value, 0);
    EXPECT_TRUE(r.ok);
  }
}

TEST(Pencil, LefschetzDivisionInDimensionSix) {
  // Nondegenerate w on C^6 divides every v^v, so distinct values do not obstruct.
  Lemma56Report r = verify_lemma56({1, 1, 1}, vals({1, 2, 3}));
  EXPECT_TRUE(r.divides);
  EXPECT_TRUE(r.solvable);
  EXPECT_FALSE(r.predicted);
  EXPECT_FALSE(r.a.has_value());
  EXPECT_FALSE(r.ok);
}

TEST(Pencil, CriterionIsCongruenceInvariant) {
  std::mt19937_64 rng(17);
  for (auto part : std::vector<std::vector<int>>{{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {1, 1}}) {
    std::vector<Rational> v(part.size(), Rational(1));
    if (part.size() > 1) v.back() = 4;
    SkewPencil p = build_canonical_pencil(part, v);
    auto [v2, w2] = congruent_pair(p, random_invertible(rng, static_cast<std::size_t>(p.dim())));
    EXPECT_EQ(divides_wedge_square(p.w, p.v, p.n), divides_wedge_square(w2, v2, p.n));
    EXPECT_EQ(divides_wedge_square(w2, v2, p.n), solvable_wedge_square(w2, v2, p.n));
  }
}

TEST(Pencil, ExteriorHelpers) {
  ExtElem e12{{0b0011u, Rational(1)}}, e34{{0b1100u, Rational(1)}};
  ExtElem w = e12;
  w[0b1100u] = 1;
  EXPECT_TRUE(top_power_nonzero(w, 2));
  EXPECT_FALSE(top_power_nonzero(e12, 2));
  EXPECT_EQ(ext_wedge(e12, e34), ext_wedge(e34, e12));
  Matrix m = skew_matrix_of(w, 4);
  EXPECT_EQ(bivector_of(m), w);
}
