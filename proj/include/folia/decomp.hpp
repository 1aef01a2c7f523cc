#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "folia/charring.hpp"
#include "folia/irrdecomp.hpp"
#include "folia/rootdata.hpp"

namespace folia {

/// Thrown when a character is not a nonnegative combination of irreducibles.
class NotGenuineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterated subtraction on the dominant slice. The next highest weight is
/// the remaining dominant weight maximizing (nu+rho', nu+rho'), ties broken
/// by the largest coordinate vector.
inline IrrDecomposition decompose_character(const FormalCharacter& chi, const Subdiagram& sd) {
  WeightMap rest;
  for (const auto& [w, m] : chi.entries) {
    if (sd.is_dominant(w)) rest.emplace(w, m);
  }
  IrrDecomposition out;
  while (!rest.empty()) {
    const Weight* best = nullptr;
    std::int64_t best_norm = 0;
    for (const auto& [w, m] : rest) {
      std::int64_t nrm = sd.shifted_norm(w);
      if (!best || nrm > best_norm || (nrm == best_norm && *best < w)) {
        best = &w;
        best_norm = nrm;
      }
    }
    Weight top = *best;
    std::int64_t m = rest.at(top);
    if (m < 0) {
      throw NotGenuineError("negative multiplicity " + std::to_string(m) + " at highest weight " + top.str());
    }
    out.add(top, m);
    for (const auto& [w, c] : freudenthal_dominant(sd, top)) {
      auto it = rest.find(w);
      std::int64_t left = (it == rest.end() ? 0 : it->second) - checked_mul(m, c);
      if (left < 0) {
        throw NotGenuineError("negative multiplicity " + std::to_string(left) + " at weight " + w.str());
      }
      if (left == 0) {
        if (it != rest.end()) rest.erase(it);
      } else {
        rest[w] = left;
      }
    }
  }
  return out;
}

inline IrrDecomposition decompose_character(const FormalCharacter& chi) {
  return decompose_character(chi, Subdiagram::full(chi.rs));
}

/// Decomposition of any Weyl-invariant (possibly virtual) character via
/// chi = sum_mu m(mu) sign(mu+rho) V_{dom(mu+rho)-rho}. Independent of the
/// Freudenthal recursion; used as a cross-check and for Adams terms.
inline IrrDecomposition decompose_virtual(const FormalCharacter& chi, const Subdiagram& sd) {
  IrrDecomposition out;
  for (const auto& [w, m] : chi.entries) {
    auto [dom, sign] = sd.dominant_conjugate(w + sd.rho());
    bool regular = true;
    for (int i : sd.nodes()) {
      if (dom[i] == 0) regular = false;
    }
    if (!regular) continue;
    out.add(dom - sd.rho(), sign * m);
  }
  return out;
}

inline IrrDecomposition decompose_virtual(const FormalCharacter& chi) {
  return decompose_virtual(chi, Subdiagram::full(chi.rs));
}

/// Sum of mult * dim over the decomposition.
inline std::int64_t dimension(const Subdiagram& sd, const IrrDecomposition& dec) {
  std::int64_t s = 0;
  for (const auto& [w, m] : dec.terms) s = checked_add(s, checked_mul(m, sd.weyl_dim(w)));
  return s;
}

inline std::int64_t dimension(const RootSystem& rs, const IrrDecomposition& dec) {
  return dimension(Subdiagram::full(rs), dec);
}

/// Character of a decomposition (inverse of decompose_character).
inline FormalCharacter recombine(const Subdiagram& sd, const IrrDecomposition& dec) {
  FormalCharacter ch(sd.root_system());
  for (const auto& [w, m] : dec.terms) ch += freudenthal_character(sd, w).scaled(m);
  return ch;
}

inline FormalCharacter recombine(const RootSystem& rs, const IrrDecomposition& dec) {
  return recombine(Subdiagram::full(rs), dec);
}

/// H^0 of the m-th exterior power of the homogeneous bundle E_mu on G/P_k,
/// twisted by O(twist): the Levi decomposition of wedge^m E_mu, shifted in
/// the lambda_k coordinate, keeping G-dominant summands.
inline IrrDecomposition levi_bundle_sections(const RootSystem& rs, int k, const Weight& mu, int m, int twist) {
  require_node(rs, k);
  rs.require_rank(mu);
  if (!is_cominuscule(rs, k)) {
    throw NotCominuscule(rs.name() + "/P" + std::to_string(k + 1) + " is not cominuscule; the bundle need not be completely reducible");
  }
  if (!is_pk_dominant(mu, k)) throw std::invalid_argument("weight " + mu.str() + " is not P_k-dominant");
  if (m < 0 || m > 4) throw std::invalid_argument("wedge degree must be between 0 and 4");
  Subdiagram levi = Subdiagram::levi(rs, k);
  FormalCharacter e = freudenthal_character(levi, mu);
  FormalCharacter w = wedge_power(e, m);
  IrrDecomposition levi_dec = decompose_character(w, levi);
  IrrDecomposition out;
  for (const auto& [levi_weight, mult] : levi_dec.terms) {
    Weight lambda = levi_weight;
    lambda.set(k, lambda[k] + twist);
    for (const auto& [g, one] : bbw_h0(rs, lambda, k).terms) out.add(g, mult * one);
  }
  return out;
}

}  // namespace folia
