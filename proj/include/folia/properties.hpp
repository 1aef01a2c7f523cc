#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "folia/extalg.hpp"
#include "folia/pforms.hpp"
#include "folia/verify.hpp"

namespace folia {

/// Randomized algebraic identities of the exterior-algebra and form layers.
struct PropertyOptions {
  std::uint64_t seed = 1;
  int multiply_back_trials = 100;
  int equivariance_trials = 20;
  int form_trials = 100;
};

namespace detail {

inline MultiVector random_multivector(std::mt19937_64& rng, int n, int m, int k, int terms) {
  MultiVector x(n, m, k);
  std::uniform_int_distribution<int> rank(0, static_cast<int>(x.dim_w()) - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> r;
    for (int i = 0; i < k; ++i) r.push_back(rank(rng));
    x.add_ranks(std::move(r), coeff(rng));
  }
  return x;
}

inline Check tally(const std::string& name, int passed, int total) {
  return Check{name, passed == total, std::to_string(passed) + " of " + std::to_string(total)};
}

}  // namespace detail

/// Psi_dual followed by wedging back is 3 * id on wedge^4 W, W = wedge^3 C^6.
inline Check property_multiply_back(std::mt19937_64& rng, int trials) {
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    MultiVector x = detail::random_multivector(rng, 6, 3, 4, 3);
    if (lift_wedge(psi_dual(x)) == x.scaled(3)) ++ok;
  }
  return detail::tally("multiply_back", ok, trials);
}

/// m, Psi_dual and xi commute with random root operators X_{r,s} on C^7.
inline std::vector<Check> property_equivariance(std::mt19937_64& rng, int trials) {
  const int n = 7;
  std::uniform_int_distribution<int> idx(1, n);
  int ok_m = 0, ok_psi = 0, ok_xi = 0;
  for (int t = 0; t < trials; ++t) {
    int r = idx(rng), s = idx(rng);
    while (s == r) s = idx(rng);
    MultiVector x2 = detail::random_multivector(rng, n, 3, 2, 4);
    MultiVector x4 = detail::random_multivector(rng, n, 3, 4, 3);
    if (sl_action(r, s, multiply_m(x2)) == multiply_m(sl_action(r, s, x2))) ++ok_m;
    if (sl_action(r, s, psi_dual(x4)) == psi_dual(sl_action(r, s, x4))) ++ok_psi;
    SymSquare q = psi_dual(detail::random_multivector(rng, n, 3, 4, 2));
    std::uniform_int_distribution<int> rank(0, static_cast<int>(q.dim_w()) - 1);
    q.add(rank(rng), rank(rng), rank(rng), rank(rng), 2);
    if (sl_action(r, s, xi(q)) == xi(sl_action(r, s, q))) ++ok_xi;
  }
  return {detail::tally("equivariance m", ok_m, trials), detail::tally("equivariance psi_dual", ok_psi, trials),
          detail::tally("equivariance xi", ok_xi, trials)};
}

/// Every tagged vector is annihilated by the raising operators and has its
/// advertised weight.
inline Check property_highest_weights() {
  int ok = 0;
  std::string bad;
  for (const auto& t : hw_tags()) {
    MultiVector w = build_hw_vector(t.tag, t.min_n);
    if (!w.is_zero() && is_highest_weight(w) && sl_weight(w) == hw_weight(t.tag, t.min_n)) ++ok;
    else bad += (bad.empty() ? " failing: " : ", ") + t.tag;
  }
  Check c = detail::tally("highest_weight", ok, static_cast<int>(hw_tags().size()));
  c.detail += bad;
  return c;
}

/// d^2 = 0, iota_R^2 = 0, Leibniz and the Euler identity on random forms;
/// Euler is checked as the Cartan formula and on the radial image.
inline std::vector<Check> property_forms(std::mt19937_64& rng, int trials) {
  std::uniform_int_distribution<int> pick_n(2, 4), pick_deg(0, 3);
  int ok_dd = 0, ok_rr = 0, ok_leib = 0, ok_euler = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = pick_n(rng);
    std::uniform_int_distribution<int> pick_p(0, n + 1);
    const int p = pick_p(rng);
    PolyForm w = random_form(rng, n, p, pick_deg(rng), 5);
    if (exterior_derivative(exterior_derivative(w)).is_zero()) ++ok_dd;
    if (p < 2 || contract_radial(contract_radial(w)).is_zero()) ++ok_rr;
    if (p == 0) {
      if (contract_radial(exterior_derivative(w)) == w.scaled(w.poly_degree())) ++ok_euler;
    } else {
      PolyForm lie = exterior_derivative(contract_radial(w));
      if (p <= n) lie += contract_radial(exterior_derivative(w));
      if (lie == w.scaled(w.poly_degree() + p) && euler_identity_check(contract_radial(w))) ++ok_euler;
    }

    std::uniform_int_distribution<int> pick_q(0, std::max(0, n - p));
    const int q = p <= n ? pick_q(rng) : 0;
    PolyForm a = random_form(rng, n, std::min(p, n), pick_deg(rng), 3);
    PolyForm b = random_form(rng, n, q, pick_deg(rng), 3);
    PolyForm lhs = exterior_derivative(wedge_forms(a, b));
    PolyForm rhs = wedge_forms(exterior_derivative(a), b);
    PolyForm tail = wedge_forms(a, exterior_derivative(b));
    if (a.p() % 2) rhs -= tail;
    else rhs += tail;
    if (lhs == rhs) ++ok_leib;
  }
  return {detail::tally("d_squared", ok_dd, trials), detail::tally("radial_squared", ok_rr, trials),
          detail::tally("leibniz", ok_leib, trials), detail::tally("euler", ok_euler, trials)};
}

inline Report run_properties(const PropertyOptions& opt = {}) {
  Report rep;
  rep.id = "properties";
  rep.anchor = "property suite";
  rep.group = "properties";
  rep.tier = "fast";
  rep.op = "properties";
  rep.description = "randomized identities of the exterior algebra and form layers";
  rep.seed = opt.seed;
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32), 0x70726fu};
  std::mt19937_64 rng(seq);
  auto t0 = std::chrono::steady_clock::now();
  Run run;
  run.checks.push_back(property_multiply_back(rng, opt.multiply_back_trials));
  for (auto& c : property_equivariance(rng, opt.equivariance_trials)) run.checks.push_back(std::move(c));
  run.checks.push_back(property_highest_weights());
  for (auto& c : property_forms(rng, opt.form_trials)) run.checks.push_back(std::move(c));
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.runs.push_back(std::move(run));
  rep.seconds = rep.runs.back().seconds;
  return rep;
}

}  // namespace folia
