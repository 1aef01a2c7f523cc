#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "folia/irrdecomp.hpp"
#include "folia/rootdata.hpp"
#include "folia/scalar.hpp"
#include "folia/weight.hpp"

namespace folia {

using WeightMap = absl::flat_hash_map<Weight, std::int64_t>;

/// Formal character: full weight support with integer multiplicities.
/// Virtual characters (with negative entries) are allowed as intermediate
/// values; is_virtual() reports them.
struct FormalCharacter {
  RootSystem rs;
  WeightMap entries;

  FormalCharacter() = default;
  explicit FormalCharacter(RootSystem r) : rs(std::move(r)) {}

  void add(const Weight& w, std::int64_t m) {
    if (m == 0) return;
    auto [it, fresh] = entries.try_emplace(w, m);
    if (!fresh) {
      it->second = checked_add(it->second, m);
      if (it->second == 0) entries.erase(it);
    }
  }

  std::int64_t multiplicity(const Weight& w) const {
    auto it = entries.find(w);
    return it == entries.end() ? 0 : it->second;
  }

  /// Sum of multiplicities (the dimension for a genuine character).
  std::int64_t mass() const {
    std::int64_t s = 0;
    for (const auto& [w, m] : entries) s = checked_add(s, m);
    return s;
  }

  bool is_virtual() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.second < 0; });
  }

  /// Entries in lexicographic order, for deterministic output.
  std::vector<std::pair<Weight, std::int64_t>> sorted() const {
    std::vector<std::pair<Weight, std::int64_t>> v(entries.begin(), entries.end());
    std::sort(v.begin(), v.end());
    return v;
  }

  FormalCharacter& operator+=(const FormalCharacter& o) {
    require_same(o);
    for (const auto& [w, m] : o.entries) add(w, m);
    return *this;
  }
  FormalCharacter& operator-=(const FormalCharacter& o) {
    require_same(o);
    for (const auto& [w, m] : o.entries) add(w, -m);
    return *this;
  }
  FormalCharacter scaled(std::int64_t s) const {
    FormalCharacter r(rs);
    if (s == 0) return r;
    for (const auto& [w, m] : entries) r.entries.emplace(w, checked_mul(m, s));
    return r;
  }

  friend bool operator==(const FormalCharacter& a, const FormalCharacter& b) {
    return a.rs.rank() == b.rs.rank() && a.entries == b.entries;
  }

  void require_same(const FormalCharacter& o) const {
    if (o.rs.name() != rs.name()) throw std::invalid_argument("root system mismatch: " + rs.name() + " vs " + o.rs.name());
  }
};

inline FormalCharacter trivial_character(const RootSystem& rs) {
  FormalCharacter c(rs);
  c.add(Weight(rs.rank()), 1);
  return c;
}

/// Multiplicities of the dominant weights of V_lambda for the given
/// subdiagram, by Freudenthal's recursion. Dominant weights are generated by
/// subtracting positive roots through dominant weights only.
inline WeightMap freudenthal_dominant(const Subdiagram& sd, const Weight& lambda) {
  sd.require_dominant(lambda);
  const RootSystem& rs = sd.root_system();
  const auto& roots = sd.positive_roots();
  std::vector<Weight> root_w;
  std::vector<int> root_h;
  for (const auto& a : roots) {
    root_w.push_back(rs.root_to_weight(a));
    int h = 0;
    for (int j = 0; j < rs.rank(); ++j) h += a[j];
    root_h.push_back(h);
  }

  absl::flat_hash_map<Weight, int> depth{{lambda, 0}};
  std::vector<std::vector<Weight>> levels{{lambda}};
  for (std::size_t lev = 0; lev < levels.size(); ++lev) {
    for (std::size_t idx = 0; idx < levels[lev].size(); ++idx) {
      Weight nu = levels[lev][idx];
      for (std::size_t r = 0; r < roots.size(); ++r) {
        Weight mu = nu - root_w[r];
        if (!sd.is_dominant(mu) || depth.contains(mu)) continue;
        std::size_t d = lev + static_cast<std::size_t>(root_h[r]);
        depth.emplace(mu, static_cast<int>(d));
        if (levels.size() <= d) levels.resize(d + 1);
        levels[d].push_back(mu);
      }
    }
  }

  WeightMap mult;
  mult.emplace(lambda, 1);
  const std::int64_t top = sd.shifted_norm(lambda);
  const std::int64_t scale = rs.gram_scale();
  for (std::size_t lev = 1; lev < levels.size(); ++lev) {
    for (const Weight& nu : levels[lev]) {
      std::int64_t num = 0;
      for (std::size_t r = 0; r < roots.size(); ++r) {
        Weight cur = nu;
        for (;;) {
          cur += root_w[r];
          Weight dom = sd.dominant_conjugate(cur).first;
          auto it = mult.find(dom);
          if (it == mult.end()) break;
          num = checked_add(num, checked_mul(it->second, rs.pair_root(cur, roots[r])));
        }
      }
      num = checked_mul(checked_mul(num, 2), scale);
      std::int64_t den = top - sd.shifted_norm(nu);
      if (den <= 0 || num % den != 0) throw ConsistencyError("Freudenthal recursion produced a non-integral multiplicity");
      mult.emplace(nu, num / den);
    }
  }
  return mult;
}

/// Expands a dominant-slice map to full support by Weyl orbits.
inline FormalCharacter expand_orbits(const Subdiagram& sd, const WeightMap& dominant) {
  FormalCharacter ch(sd.root_system());
  for (const auto& [w, m] : dominant) {
    for (const auto& x : sd.orbit(w)) ch.add(x, m);
  }
  return ch;
}

inline FormalCharacter freudenthal_character(const Subdiagram& sd, const Weight& lambda) {
  return expand_orbits(sd, freudenthal_dominant(sd, lambda));
}

inline FormalCharacter freudenthal_character(const RootSystem& rs, const Weight& lambda) {
  return freudenthal_character(Subdiagram::full(rs), lambda);
}

/// Tensor product at the character level (convolution).
inline FormalCharacter char_product(const FormalCharacter& a, const FormalCharacter& b) {
  a.require_same(b);
  FormalCharacter r(a.rs);
  r.entries.reserve(a.entries.size() * 2);
  for (const auto& [wa, ma] : a.entries) {
    for (const auto& [wb, mb] : b.entries) r.add(wa + wb, checked_mul(ma, mb));
  }
  return r;
}

/// psi^m: every weight scaled by m, multiplicities unchanged.
inline FormalCharacter adams_operation(const FormalCharacter& chi, int m) {
  if (m < 1) throw std::invalid_argument("Adams operation needs m >= 1");
  FormalCharacter r(chi.rs);
  for (const auto& [w, mult] : chi.entries) r.add(m * w, mult);
  return r;
}

namespace detail {

// Coefficient of x^k in prod_w f(x e^w)^{m_w}, where the per-weight factor
// contributes coeff(m_w, i) at x^i. Updated in place, top degree first.
template <typename Coeff>
FormalCharacter power_dp(const FormalCharacter& chi, int k, Coeff coeff) {
  if (k < 0) throw std::invalid_argument("negative degree");
  std::vector<WeightMap> e(static_cast<std::size_t>(k + 1));
  e[0].emplace(Weight(chi.rs.rank()), 1);
  for (const auto& [w, m] : chi.sorted()) {
    if (m < 0) throw std::invalid_argument("exterior/symmetric powers need a genuine character");
    for (int j = k; j >= 1; --j) {
      auto& target = e[static_cast<std::size_t>(j)];
      for (int i = 1; i <= j; ++i) {
        std::int64_t c = coeff(m, i);
        if (c == 0) break;
        Weight shift = i * w;
        for (const auto& [x, cx] : e[static_cast<std::size_t>(j - i)]) {
          auto& slot = target[x + shift];
          slot = checked_add(slot, checked_mul(c, cx));
        }
      }
    }
  }
  FormalCharacter r(chi.rs);
  for (const auto& [x, c] : e[static_cast<std::size_t>(k)]) r.add(x, c);
  return r;
}

}  // namespace detail

inline FormalCharacter wedge_power(const FormalCharacter& chi, int k) {
  return detail::power_dp(chi, k, [](std::int64_t m, int i) { return binomial(m, i); });
}

inline FormalCharacter sym_power(const FormalCharacter& chi, int k) {
  return detail::power_dp(chi, k, [](std::int64_t m, int i) { return binomial(m + i - 1, i); });
}

/// Partition of n <= 4, parts in nonincreasing order.
using Partition = std::vector<int>;

namespace detail {

struct ClassRow {
  Partition cycle_type;
  std::int64_t size;
};

inline const std::vector<ClassRow>& classes(int n) {
  static const std::vector<ClassRow> c1{{{1}, 1}};
  static const std::vector<ClassRow> c2{{{1, 1}, 1}, {{2}, 1}};
  static const std::vector<ClassRow> c3{{{1, 1, 1}, 1}, {{2, 1}, 3}, {{3}, 2}};
  static const std::vector<ClassRow> c4{{{1, 1, 1, 1}, 1}, {{2, 1, 1}, 6}, {{2, 2}, 3}, {{3, 1}, 8}, {{4}, 6}};
  switch (n) {
    case 1: return c1;
    case 2: return c2;
    case 3: return c3;
    case 4: return c4;
    default: throw std::invalid_argument("plethysm degree must be between 1 and 4");
  }
}

// Irreducible characters of S_n on the classes above.
inline std::vector<std::int64_t> sn_character(const Partition& mu) {
  static const std::map<Partition, std::vector<std::int64_t>> table{
      {{1}, {1}},
      {{2}, {1, 1}},
      {{1, 1}, {1, -1}},
      {{3}, {1, 1, 1}},
      {{2, 1}, {2, 0, -1}},
      {{1, 1, 1}, {1, -1, 1}},
      {{4}, {1, 1, 1, 1, 1}},
      {{3, 1}, {3, 1, -1, 0, -1}},
      {{2, 2}, {2, 0, 2, -1, 0}},
      {{2, 1, 1}, {3, -1, -1, 0, 1}},
      {{1, 1, 1, 1}, {1, -1, 1, 1, -1}},
  };
  auto it = table.find(mu);
  if (it == table.end()) throw std::invalid_argument("unsupported partition for plethysm");
  return it->second;
}

}  // namespace detail

inline int partition_size(const Partition& mu) {
  int s = 0;
  for (int p : mu) s += p;
  return s;
}

/// Dimension of the S_n irreducible indexed by mu.
inline std::int64_t sn_dimension(const Partition& mu) { return detail::sn_character(mu).front(); }

/// Gamma^mu(chi) from power sums and S_n character values.
inline FormalCharacter schur_plethysm(const FormalCharacter& chi, const Partition& mu) {
  const int n = partition_size(mu);
  const auto& cls = detail::classes(n);
  const auto values = detail::sn_character(mu);
  FormalCharacter acc(chi.rs);
  for (std::size_t c = 0; c < cls.size(); ++c) {
    std::int64_t coeff = checked_mul(cls[c].size, values[c]);
    if (coeff == 0) continue;
    FormalCharacter term = trivial_character(chi.rs);
    for (int part : cls[c].cycle_type) term = char_product(term, adams_operation(chi, part));
    acc += term.scaled(coeff);
  }
  std::int64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  FormalCharacter r(chi.rs);
  for (const auto& [w, m] : acc.entries) {
    if (m % fact != 0) throw ConsistencyError("plethysm multiplicity not divisible by " + std::to_string(fact));
    r.add(w, m / fact);
  }
  return r;
}

/// Partitions of n in reverse lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
  if (n < 1) throw std::invalid_argument("partitions need n >= 1");
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline Partition conjugate(const Partition& mu) {
  Partition c;
  for (int i = 0; !mu.empty() && i < mu.front(); ++i) {
    int cnt = 0;
    for (int p : mu) cnt += p > i ? 1 : 0;
    c.push_back(cnt);
  }
  return c;
}

}  // namespace folia
