#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "folia/scalar.hpp"
#include "folia/weight.hpp"

namespace folia {

/// Multiset of irreducible highest weights. Keys are kept in lexicographic
/// order so that every serialization is deterministic.
struct IrrDecomposition {
  std::map<Weight, std::int64_t> terms;

  void add(const Weight& w, std::int64_t mult) {
    if (mult == 0) return;
    auto& slot = terms[w];
    slot = checked_add(slot, mult);
    if (slot == 0) terms.erase(w);
  }

  std::int64_t multiplicity(const Weight& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? 0 : it->second;
  }

  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }

  std::int64_t total_multiplicity() const {
    std::int64_t s = 0;
    for (const auto& [w, m] : terms) s = checked_add(s, m);
    return s;
  }

  IrrDecomposition& operator+=(const IrrDecomposition& o) {
    for (const auto& [w, m] : o.terms) add(w, m);
    return *this;
  }

  friend bool operator==(const IrrDecomposition& a, const IrrDecomposition& b) {
    return a.terms == b.terms;
  }

  /// "l1+l3 + 2*(l2)" style summary.
  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, m] : terms) {
      if (!first) os << " + ";
      first = false;
      if (m != 1) os << m << "*";
      os << "V(" << weight_label(w) << ")";
    }
    return os.str();
  }
};

/// Exact multiplicity comparison.
inline bool contains(const IrrDecomposition& dec, const Weight& w, std::int64_t mult) {
  return dec.multiplicity(w) == mult;
}

}  // namespace folia
