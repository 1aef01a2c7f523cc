#include <gtest/gtest.h>

#include <random>

#include "folia/pforms.hpp"
#include "folia/scalar.hpp"

using namespace folia;

TEST(PolyForm, ExteriorDerivativeAndContraction) {
  PolyForm w(2, 1, 2);
  w.add({1, 1, 0}, {2}, 1);
  PolyForm dw = exterior_derivative(w);
  PolyForm expected(2, 2, 1);
  expected.add({0, 1, 0}, {0, 2}, 1);
  expected.add({1, 0, 0}, {1, 2}, 1);
  EXPECT_EQ(dw, expected);
  PolyForm r = contract_radial(w);
  EXPECT_EQ(r.p(), 0);
  EXPECT_EQ(r.poly_degree(), 3);
  EXPECT_EQ(r.str(), "x0x1x2");
  EXPECT_THROW(contract_radial(PolyForm(2, 0, 1)), std::invalid_argument);
}

TEST(PolyForm, ShapeErrors) {
  EXPECT_THROW(PolyForm(2, 4, 0), std::invalid_argument);
  PolyForm w(2, 1, 1);
  EXPECT_THROW(w.add({1, 0}, {0}, 1), std::invalid_argument);
  EXPECT_THROW(w.add({1, 1, 0}, {0}, 1), std::invalid_argument);
  EXPECT_THROW(w.add({1, 0, 0}, {3}, 1), std::invalid_argument);
}

TEST(PolyForm, RandomIdentities) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    PolyForm w = random_form(rng, 3, 1 + t % 3, 2, 4);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(w)).is_zero());
    EXPECT_TRUE(euler_identity_check(contract_radial(w)));
  }
}

TEST(ContactForm, NotIntegrableWithScalarTwo) {
  for (int l = 2; l <= 4; ++l) {
    PolyForm w = contact_power_form(l);
    EXPECT_TRUE(contract_radial(w).is_zero());
    EXPECT_FALSE(is_integrable(w));
    PolyForm psi = psi_wedge_d(w);
    PolyForm display(3, 3, 2 * l - 3);
    std::vector<int> base{2 * l - 4, 0, 0, 0};
    const int sign[4] = {1, -1, 1, -1};
    for (int i = 0; i < 4; ++i) {
      auto m = base;
      ++m[static_cast<std::size_t>(i)];
      std::vector<int> dx;
      for (int j = 0; j < 4; ++j) {
        if (j != i) dx.push_back(j);
      }
      display.add(m, dx, sign[i]);
    }
    auto ratio = psi.ratio_to(display);
    ASSERT_TRUE(ratio.has_value()) << l;
    EXPECT_EQ(*ratio, 2) << l;
  }
}

TEST(PencilForms, FdgMinusGdfIsIntegrable) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 4; ++n) {
    PolyForm f = random_form(rng, n, 0, 2, 4), g = random_form(rng, n, 0, 2, 4);
    PolyForm w = wedge_forms(f, exterior_derivative(g));
    w -= wedge_forms(g, exterior_derivative(f));
    EXPECT_TRUE(contract_radial(w).is_zero());
    EXPECT_TRUE(is_integrable(w));
    EXPECT_TRUE(psi_wedge_d(w).is_zero());
  }
}

TEST(PolyForm, LocalDecomposability) {
  PolyForm dec(3, 2, 0);
  dec.add({0, 0, 0, 0}, {0, 1}, 1);
  EXPECT_TRUE(is_lds(dec));
  PolyForm sym(3, 2, 0);
  sym.add({0, 0, 0, 0}, {0, 1}, 1);
  sym.add({0, 0, 0, 0}, {2, 3}, 1);
  EXPECT_FALSE(is_lds(sym));
}

TEST(RadialKernel, TwistedFormDimensions) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(radial_kernel_dimension(n, 1, 0), static_cast<std::size_t>(binomial(n + 1, 2))) << n;
  }
  EXPECT_EQ(radial_kernel_dimension(4, 3, 0), static_cast<std::size_t>(binomial(5, 4)));
  EXPECT_EQ(radial_kernel_dimension(3, 1, -1), 0u);
}
