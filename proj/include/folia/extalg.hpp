#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "folia/linalg.hpp"
#include "folia/scalar.hpp"

namespace folia {

/// All m-subsets of {1..n} in lexicographic order, with their ranks.
/// Subsets are bitmasks (bit i-1 for index i).
class SubsetBasis {
 public:
  static std::shared_ptr<const SubsetBasis> get(int n, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const SubsetBasis>> cache;
    if (n < 1 || n > 24 || m < 0 || m > n) {
      throw std::invalid_argument("unsupported subset basis n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, m}];
    if (!slot) slot = std::shared_ptr<const SubsetBasis>(new SubsetBasis(n, m));
    return slot;
  }

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return masks_.size(); }
  std::uint32_t mask(std::size_t rank) const { return masks_[rank]; }
  std::size_t rank(std::uint32_t mask) const {
    auto it = rank_.find(mask);
    if (it == rank_.end()) throw std::invalid_argument("subset not in basis");
    return it->second;
  }
  /// 1-based sorted indices of a basis element.
  std::vector<int> indices(std::size_t rank) const {
    std::vector<int> v;
    for (int i = 0; i < n_; ++i) {
      if (masks_[rank] >> i & 1u) v.push_back(i + 1);
    }
    return v;
  }

 private:
  SubsetBasis(int n, int m) : n_(n), m_(m) {
    std::vector<int> cur;
    build(1, cur);
    for (std::size_t i = 0; i < masks_.size(); ++i) rank_.emplace(masks_[i], i);
  }
  void build(int start, std::vector<int>& cur) {
    if (static_cast<int>(cur.size()) == m_) {
      std::uint32_t mask = 0;
      for (int x : cur) mask |= 1u << (x - 1);
      masks_.push_back(mask);
      return;
    }
    for (int x = start; x <= n_; ++x) {
      cur.push_back(x);
      build(x + 1, cur);
      cur.pop_back();
    }
  }

  int n_, m_;
  std::vector<std::uint32_t> masks_;
  absl::flat_hash_map<std::uint32_t, std::size_t> rank_;
};

/// Sorts indices in place; returns the permutation sign, or 0 on a repeat.
inline int sort_with_sign(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  return sign;
}

/// Strictly increasing tuple of inner-basis ranks.
struct OuterKey {
  static constexpr int kMax = 24;
  std::array<std::uint16_t, kMax> v{};
  std::uint8_t len = 0;

  int size() const { return len; }
  std::uint16_t operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  friend bool operator==(const OuterKey& a, const OuterKey& b) { return a.len == b.len && a.v == b.v; }
  friend bool operator<(const OuterKey& a, const OuterKey& b) {
    return std::lexicographical_compare(a.v.begin(), a.v.begin() + a.len, b.v.begin(), b.v.begin() + b.len);
  }
  template <typename H>
  friend H AbslHashValue(H h, const OuterKey& k) {
    return H::combine(H::combine_contiguous(std::move(h), k.v.data(), k.len), k.len);
  }
};

/// Normalizes a tuple of inner ranks into an OuterKey; sign 0 on a repeat.
inline std::pair<OuterKey, int> normalize_outer(std::vector<int> ranks) {
  if (ranks.size() > static_cast<std::size_t>(OuterKey::kMax)) throw std::length_error("outer degree too large");
  int sign = sort_with_sign(ranks);
  OuterKey k;
  k.len = static_cast<std::uint8_t>(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) k.v[i] = static_cast<std::uint16_t>(ranks[i]);
  return {k, sign};
}

/// Exact sparse element of wedge^k W with W = wedge^m C^n.
class MultiVector {
 public:
  MultiVector(int n, int m, int k) : basis_(SubsetBasis::get(n, m)), k_(k) {
    if (k < 0 || k > static_cast<int>(basis_->size())) throw std::length_error("outer degree exceeds dim W");
  }

  int n() const { return basis_->n(); }
  int inner_degree() const { return basis_->m(); }
  int outer_degree() const { return k_; }
  std::size_t dim_w() const { return basis_->size(); }
  const SubsetBasis& basis() const { return *basis_; }
  const absl::flat_hash_map<OuterKey, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Inner rank of an arbitrary index tuple with its normalization sign.
  std::pair<int, int> inner_rank(std::vector<int> idx) const {
    if (static_cast<int>(idx.size()) != inner_degree()) throw std::invalid_argument("wrong inner degree");
    for (int x : idx) {
      if (x < 1 || x > n()) throw std::invalid_argument("index out of range 1.." + std::to_string(n()));
    }
    int sign = sort_with_sign(idx);
    if (sign == 0) return {0, 0};
    std::uint32_t mask = 0;
    for (int x : idx) mask |= 1u << (x - 1);
    return {static_cast<int>(basis_->rank(mask)), sign};
  }

  /// Adds c * e_{slot_1} ^ ... ^ e_{slot_k}, normalizing every slot.
  void add_term(const std::vector<std::vector<int>>& slots, const Rational& c) {
    if (static_cast<int>(slots.size()) != k_) throw std::invalid_argument("wrong outer degree");
    std::vector<int> ranks;
    int sign = 1;
    for (const auto& s : slots) {
      auto [r, sg] = inner_rank(s);
      if (sg == 0) return;
      sign *= sg;
      ranks.push_back(r);
    }
    add_ranks(std::move(ranks), sign * c);
  }

  void add_ranks(std::vector<int> ranks, const Rational& c) {
    auto [key, sign] = normalize_outer(std::move(ranks));
    if (sign == 0) return;
    add_key(key, sign * c);
  }

  void add_key(const OuterKey& key, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Coefficient of an arbitrary (unnormalized) basis word.
  Rational coefficient(const std::vector<std::vector<int>>& slots) const {
    if (static_cast<int>(slots.size()) != k_) throw std::invalid_argument("wrong outer degree");
    std::vector<int> ranks;
    int sign = 1;
    for (const auto& s : slots) {
      auto [r, sg] = inner_rank(s);
      if (sg == 0) return 0;
      sign *= sg;
      ranks.push_back(r);
    }
    auto [key, sg] = normalize_outer(std::move(ranks));
    if (sg == 0) return 0;
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : Rational(sign * sg * it->second);
  }

  MultiVector& operator+=(const MultiVector& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add_key(k, c);
    return *this;
  }
  MultiVector scaled(const Rational& s) const {
    MultiVector r(n(), inner_degree(), k_);
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }
  friend bool operator==(const MultiVector& a, const MultiVector& b) {
    return a.n() == b.n() && a.inner_degree() == b.inner_degree() && a.k_ == b.k_ && a.terms_ == b.terms_;
  }

  std::vector<std::pair<OuterKey, Rational>> sorted() const {
    std::vector<std::pair<OuterKey, Rational>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  /// Slots of a key as 1-based index tuples.
  std::vector<std::vector<int>> slots(const OuterKey& k) const {
    std::vector<std::vector<int>> out;
    for (int i = 0; i < k.size(); ++i) out.push_back(basis_->indices(k[i]));
    return out;
  }

  void require_compatible(const MultiVector& o) const {
    if (o.n() != n() || o.inner_degree() != inner_degree() || o.k_ != k_) {
      throw std::invalid_argument("incompatible multivectors");
    }
  }

 private:
  std::shared_ptr<const SubsetBasis> basis_;
  int k_;
  absl::flat_hash_map<OuterKey, Rational> terms_;
};

inline MultiVector wedge(const MultiVector& u, const MultiVector& v) {
  if (u.n() != v.n() || u.inner_degree() != v.inner_degree()) throw std::invalid_argument("wedge of incompatible multivectors");
  const int k = u.outer_degree() + v.outer_degree();
  if (k > static_cast<int>(u.dim_w())) throw std::length_error("wedge degree " + std::to_string(k) + " exceeds dim W");
  MultiVector r(u.n(), u.inner_degree(), k);
  std::vector<int> ranks(static_cast<std::size_t>(k));
  for (const auto& [ku, cu] : u.terms()) {
    for (const auto& [kv, cv] : v.terms()) {
      for (int i = 0; i < ku.size(); ++i) ranks[static_cast<std::size_t>(i)] = ku[i];
      for (int i = 0; i < kv.size(); ++i) ranks[static_cast<std::size_t>(ku.size() + i)] = kv[i];
      r.add_ranks(ranks, cu * cv);
    }
  }
  return r;
}

inline MultiVector wedge_power(const MultiVector& x, int k) {
  if (k < 1) throw std::invalid_argument("wedge power needs k >= 1");
  MultiVector r = x;
  for (int i = 1; i < k; ++i) r = wedge(r, x);
  return r;
}

/// m: wedge^2(wedge^m C^n) -> wedge^{2m} C^n, e_I ^ e_J -> e_{IJ}.
inline MultiVector multiply_m(const MultiVector& x) {
  if (x.outer_degree() != 2) throw std::invalid_argument("multiply_m needs outer degree 2");
  const int m = x.inner_degree();
  if (2 * m > x.n()) throw std::invalid_argument("multiply_m target degree exceeds n");
  MultiVector r(x.n(), 2 * m, 1);
  for (const auto& [k, c] : x.terms()) {
    auto s = x.slots(k);
    std::vector<int> cat = s[0];
    cat.insert(cat.end(), s[1].begin(), s[1].end());
    r.add_term({cat}, c);
  }
  return r;
}

/// Element of S^2(wedge^2 W); keys are sorted pairs of wedge^2 W basis
/// indices p = i * dimW + j with i < j.
class SymSquare {
 public:
  SymSquare(int n, int m) : basis_(SubsetBasis::get(n, m)) {}

  int n() const { return basis_->n(); }
  int inner_degree() const { return basis_->m(); }
  std::uint32_t dim_w() const { return static_cast<std::uint32_t>(basis_->size()); }
  const SubsetBasis& basis() const { return *basis_; }
  const absl::flat_hash_map<std::uint64_t, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Index of a^b in wedge^2 W with its sign; sign 0 when a == b.
  std::pair<std::uint32_t, int> pair_index(int a, int b) const {
    if (a == b) return {0, 0};
    if (a < b) return {static_cast<std::uint32_t>(a) * dim_w() + static_cast<std::uint32_t>(b), 1};
    return {static_cast<std::uint32_t>(b) * dim_w() + static_cast<std::uint32_t>(a), -1};
  }
  std::pair<int, int> unpair(std::uint32_t p) const {
    return {static_cast<int>(p / dim_w()), static_cast<int>(p % dim_w())};
  }

  /// Adds c (a^b).(c^d) for inner ranks a, b, c, d.
  void add(int a, int b, int c, int d, const Rational& coeff) {
    auto [p, s1] = pair_index(a, b);
    auto [q, s2] = pair_index(c, d);
    if (s1 == 0 || s2 == 0 || coeff == 0) return;
    add_pair(p, q, s1 * s2 * coeff);
  }
  void add_pair(std::uint32_t p, std::uint32_t q, const Rational& c) {
    if (c == 0) return;
    if (p > q) std::swap(p, q);
    std::uint64_t key = static_cast<std::uint64_t>(p) << 32 | q;
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  SymSquare& operator+=(const SymSquare& o) {
    for (const auto& [k, c] : o.terms_) add_pair(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k), c);
    return *this;
  }
  SymSquare scaled(const Rational& s) const {
    SymSquare r(n(), inner_degree());
    for (const auto& [k, c] : terms_) r.add_pair(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k), c * s);
    return r;
  }
  friend bool operator==(const SymSquare& a, const SymSquare& b) {
    return a.n() == b.n() && a.inner_degree() == b.inner_degree() && a.terms_ == b.terms_;
  }

 private:
  std::shared_ptr<const SubsetBasis> basis_;
  absl::flat_hash_map<std::uint64_t, Rational> terms_;
};

/// Element of wedge^{2m} C^n (x) wedge^2 W; keys (rank of 2m-subset, pair index).
class MixedTensor {
 public:
  MixedTensor(int n, int m) : w_(SubsetBasis::get(n, m)), big_(SubsetBasis::get(n, 2 * m)) {}

  int n() const { return w_->n(); }
  int inner_degree() const { return w_->m(); }
  std::uint32_t dim_w() const { return static_cast<std::uint32_t>(w_->size()); }
  const SubsetBasis& w_basis() const { return *w_; }
  const SubsetBasis& big_basis() const { return *big_; }
  const absl::flat_hash_map<std::uint64_t, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add(std::uint32_t big_rank, std::uint32_t pair, const Rational& c) {
    if (c == 0) return;
    std::uint64_t key = static_cast<std::uint64_t>(big_rank) << 32 | pair;
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  MixedTensor& operator+=(const MixedTensor& o) {
    for (const auto& [k, c] : o.terms_) add(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k), c);
    return *this;
  }
  MixedTensor scaled(const Rational& s) const {
    MixedTensor r(n(), inner_degree());
    for (const auto& [k, c] : terms_) r.add(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k), c * s);
    return r;
  }
  friend bool operator==(const MixedTensor& a, const MixedTensor& b) {
    return a.n() == b.n() && a.inner_degree() == b.inner_degree() && a.terms_ == b.terms_;
  }

  /// Coefficient of e_{big} (x) (e_{first} ^ e_{second}) for arbitrary
  /// index tuples, normalized with sign. Returns the coefficient as the
  /// key is written (i.e. already multiplied by the normalization sign).
  Rational coefficient(std::vector<int> big, std::vector<int> first, std::vector<int> second) const {
    const int m = inner_degree();
    if (static_cast<int>(big.size()) != 2 * m || static_cast<int>(first.size()) != m ||
        static_cast<int>(second.size()) != m) {
      throw std::invalid_argument("malformed mixed-tensor key");
    }
    for (const auto* v : {&big, &first, &second}) {
      for (int x : *v) {
        if (x < 1 || x > n()) throw std::invalid_argument("index out of range in mixed-tensor key");
      }
    }
    int sign = sort_with_sign(big) * sort_with_sign(first) * sort_with_sign(second);
    if (sign == 0) return 0;
    auto mask = [](const std::vector<int>& v) {
      std::uint32_t r = 0;
      for (int x : v) r |= 1u << (x - 1);
      return r;
    };
    auto a = static_cast<std::uint32_t>(w_->rank(mask(first)));
    auto b = static_cast<std::uint32_t>(w_->rank(mask(second)));
    if (a == b) return 0;
    if (a > b) {
      std::swap(a, b);
      sign = -sign;
    }
    std::uint64_t key = static_cast<std::uint64_t>(big_->rank(mask(big))) << 32 | (a * dim_w() + b);
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : Rational(sign * it->second);
  }

 private:
  std::shared_ptr<const SubsetBasis> w_, big_;
  absl::flat_hash_map<std::uint64_t, Rational> terms_;
};

/// Diagonal map wedge^4 W -> S^2 wedge^2 W:
/// a^b^c^d -> (a^b).(c^d) - (a^c).(b^d) + (a^d).(b^c).
inline SymSquare psi_dual(const MultiVector& x) {
  if (x.outer_degree() != 4) throw std::invalid_argument("psi_dual needs outer degree 4");
  SymSquare r(x.n(), x.inner_degree());
  for (const auto& [k, c] : x.terms()) {
    int a = k[0], b = k[1], cc = k[2], d = k[3];
    r.add(a, b, cc, d, c);
    r.add(a, cc, b, d, -c);
    r.add(a, d, b, cc, c);
  }
  return r;
}

/// The three sums of psi_dual(u ^ v) taken separately, evaluated on the
/// antisymmetric tensor representatives of u and v (each a^b of u is
/// expanded as (a(x)b - b(x)a)/2). Their signed total P1 - P2 + P3 equals
/// psi_dual(u ^ v).
inline std::array<SymSquare, 3> psi_dual_parts(const MultiVector& u, const MultiVector& v) {
  if (u.outer_degree() != 2 || v.outer_degree() != 2) throw std::invalid_argument("psi_dual_parts needs bivectors");
  std::array<SymSquare, 3> parts{SymSquare(u.n(), u.inner_degree()), SymSquare(u.n(), u.inner_degree()),
                                 SymSquare(u.n(), u.inner_degree())};
  const Rational quarter(1, 4);
  for (const auto& [ku, cu] : u.terms()) {
    for (const auto& [kv, cv] : v.terms()) {
      Rational c = cu * cv * quarter;
      for (int su = 0; su < 2; ++su) {
        int a = su ? ku[1] : ku[0], b = su ? ku[0] : ku[1];
        for (int sv = 0; sv < 2; ++sv) {
          int cc = sv ? kv[1] : kv[0], d = sv ? kv[0] : kv[1];
          Rational s = (su ^ sv) ? Rational(-c) : c;
          parts[0].add(a, b, cc, d, s);
          parts[1].add(a, cc, b, d, s);
          parts[2].add(a, d, b, cc, s);
        }
      }
    }
  }
  return parts;
}

/// Wedges each pair of a SymSquare back into wedge^4 W.
inline MultiVector lift_wedge(const SymSquare& s) {
  MultiVector r(s.n(), s.inner_degree(), 4);
  for (const auto& [key, c] : s.terms()) {
    auto [a, b] = s.unpair(static_cast<std::uint32_t>(key >> 32));
    auto [cc, d] = s.unpair(static_cast<std::uint32_t>(key));
    r.add_ranks({a, b, cc, d}, c);
  }
  return r;
}

/// xi((a^b).(c^d)) = m(a^b) (x) (c^d) + m(c^d) (x) (a^b).
inline MixedTensor xi(const SymSquare& s) {
  const int m = s.inner_degree();
  if (2 * m > s.n()) throw std::invalid_argument("xi target degree exceeds n");
  MixedTensor r(s.n(), m);
  const auto& wb = s.basis();
  const auto& big = r.big_basis();
  auto mult = [&](std::uint32_t p) -> std::pair<std::uint32_t, int> {
    auto [a, b] = s.unpair(p);
    std::uint32_t ma = wb.mask(static_cast<std::size_t>(a)), mb = wb.mask(static_cast<std::size_t>(b));
    if (ma & mb) return {0, 0};
    // sign of sorting the concatenation: count pairs (x in a, y in b) with x > y
    int inv = 0;
    for (int i = 0; i < s.n(); ++i) {
      if (!(mb >> i & 1u)) continue;
      inv += __builtin_popcount(ma >> (i + 1));
    }
    return {static_cast<std::uint32_t>(big.rank(ma | mb)), (inv & 1) ? -1 : 1};
  };
  for (const auto& [key, c] : s.terms()) {
    auto p = static_cast<std::uint32_t>(key >> 32), q = static_cast<std::uint32_t>(key);
    auto [mp, sp] = mult(p);
    auto [mq, sq] = mult(q);
    if (sp != 0) r.add(mp, q, sp * c);
    if (sq != 0) r.add(mq, p, sq * c);
  }
  return r;
}

namespace detail {

// X_{r,s} on one inner subset: sign and new mask, or sign 0.
inline std::pair<std::uint32_t, int> raise_mask(std::uint32_t mask, int r, int s) {
  std::uint32_t br = 1u << (r - 1), bs = 1u << (s - 1);
  if (!(mask & bs) || (mask & br)) return {0, 0};
  int lo = std::min(r, s), hi = std::max(r, s);
  std::uint32_t between = mask & (((1u << (hi - 1)) - 1) & ~((1u << lo) - 1));
  int sign = (__builtin_popcount(between) & 1) ? -1 : 1;
  return {(mask & ~bs) | br, sign};
}

inline void check_rs(int r, int s, int n) {
  if (r == s || r < 1 || s < 1 || r > n || s > n) throw std::invalid_argument("X_{r,s} needs distinct indices in 1..n");
}

}  // namespace detail

/// X_{r,s} acting as a derivation on every slot.
inline MultiVector sl_action(int r, int s, const MultiVector& x) {
  detail::check_rs(r, s, x.n());
  MultiVector out(x.n(), x.inner_degree(), x.outer_degree());
  const auto& b = x.basis();
  for (const auto& [k, c] : x.terms()) {
    for (int slot = 0; slot < k.size(); ++slot) {
      auto [nm, sg] = detail::raise_mask(b.mask(k[slot]), r, s);
      if (sg == 0) continue;
      std::vector<int> ranks(k.v.begin(), k.v.begin() + k.size());
      ranks[static_cast<std::size_t>(slot)] = static_cast<int>(b.rank(nm));
      out.add_ranks(std::move(ranks), sg * c);
    }
  }
  return out;
}

inline SymSquare sl_action(int r, int s, const SymSquare& x) {
  detail::check_rs(r, s, x.n());
  SymSquare out(x.n(), x.inner_degree());
  const auto& b = x.basis();
  for (const auto& [key, c] : x.terms()) {
    auto [a, bb] = x.unpair(static_cast<std::uint32_t>(key >> 32));
    auto [cc, d] = x.unpair(static_cast<std::uint32_t>(key));
    int slots[4] = {a, bb, cc, d};
    for (int i = 0; i < 4; ++i) {
      auto [nm, sg] = detail::raise_mask(b.mask(static_cast<std::size_t>(slots[i])), r, s);
      if (sg == 0) continue;
      int t[4] = {slots[0], slots[1], slots[2], slots[3]};
      t[i] = static_cast<int>(b.rank(nm));
      out.add(t[0], t[1], t[2], t[3], sg * c);
    }
  }
  return out;
}

inline MixedTensor sl_action(int r, int s, const MixedTensor& x) {
  detail::check_rs(r, s, x.n());
  MixedTensor out(x.n(), x.inner_degree());
  const auto& wb = x.w_basis();
  const auto& big = x.big_basis();
  const std::uint32_t dw = x.dim_w();
  for (const auto& [key, c] : x.terms()) {
    auto br = static_cast<std::uint32_t>(key >> 32);
    auto p = static_cast<std::uint32_t>(key);
    int a = static_cast<int>(p / dw), b = static_cast<int>(p % dw);
    auto [nbig, sb] = detail::raise_mask(big.mask(br), r, s);
    if (sb != 0) out.add(static_cast<std::uint32_t>(big.rank(nbig)), p, sb * c);
    for (int i = 0; i < 2; ++i) {
      auto [nm, sg] = detail::raise_mask(wb.mask(static_cast<std::size_t>(i ? b : a)), r, s);
      if (sg == 0) continue;
      int na = i ? a : static_cast<int>(wb.rank(nm));
      int nb = i ? static_cast<int>(wb.rank(nm)) : b;
      if (na == nb) continue;
      int sign = sg;
      if (na > nb) {
        std::swap(na, nb);
        sign = -sign;
      }
      out.add(br, static_cast<std::uint32_t>(na) * dw + static_cast<std::uint32_t>(nb), sign * c);
    }
  }
  return out;
}

/// Index counts c_1..c_n of a basis word; the sl_n weight has a_i = c_i - c_{i+1}.
inline std::vector<int> weight_counts(const MultiVector& x, const OuterKey& k) {
  std::vector<int> c(static_cast<std::size_t>(x.n()), 0);
  for (int i = 0; i < k.size(); ++i) {
    for (int idx : x.basis().indices(k[i])) ++c[static_cast<std::size_t>(idx - 1)];
  }
  return c;
}

/// sl_n weight (fundamental coordinates, length n-1) of a weight vector;
/// throws if the element is not homogeneous.
inline std::vector<int> sl_weight(const MultiVector& x) {
  if (x.is_zero()) throw std::invalid_argument("zero vector has no weight");
  std::vector<int> first;
  for (const auto& [k, c] : x.terms()) {
    auto cnt = weight_counts(x, k);
    std::vector<int> w;
    for (int i = 0; i + 1 < x.n(); ++i) w.push_back(cnt[static_cast<std::size_t>(i)] - cnt[static_cast<std::size_t>(i + 1)]);
    if (first.empty()) first = w;
    else if (first != w) throw std::invalid_argument("element is not a weight vector");
  }
  return first;
}

/// True when every simple raising operator X_{i,i+1} kills x.
inline bool is_highest_weight(const MultiVector& x) {
  for (int i = 1; i < x.n(); ++i) {
    if (!sl_action(i, i + 1, x).is_zero()) return false;
  }
  return true;
}

namespace detail {

inline int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  }
  return (inv & 1) ? -1 : 1;
}

// Calls f(perm, sign) for every permutation of {1..k}.
template <typename F>
void for_each_perm(int k, F&& f) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 1);
  do {
    f(p, perm_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

// Integer accumulator for large symmetrized sums.
class Accumulator {
 public:
  Accumulator(const MultiVector& proto) : proto_(proto) {}
  void add(const std::vector<std::vector<int>>& slots, std::int64_t c) {
    std::vector<int> ranks;
    int sign = 1;
    for (const auto& s : slots) {
      auto [r, sg] = proto_.inner_rank(s);
      if (sg == 0) return;
      sign *= sg;
      ranks.push_back(r);
    }
    auto [key, sg] = normalize_outer(std::move(ranks));
    if (sg == 0) return;
    auto& slot = acc_[key];
    slot = checked_add(slot, sign * sg * c);
  }
  MultiVector result() const {
    MultiVector r(proto_.n(), proto_.inner_degree(), proto_.outer_degree());
    for (const auto& [k, c] : acc_) r.add_key(k, Rational(c));
    return r;
  }

 private:
  const MultiVector& proto_;
  absl::flat_hash_map<OuterKey, std::int64_t> acc_;
};

}  // namespace detail

/// Tags of the symmetrized highest-weight vectors and their sl_n weights.
struct HwTag {
  std::string tag;
  int min_n;
  int outer_degree;
  std::vector<int> support;  // fundamental weights (1-based) of the advertised weight
};

inline const std::vector<HwTag>& hw_tags() {
  static const std::vector<HwTag> tags{
      {"w6", 6, 2, {6}},           {"w24", 6, 2, {2, 4}},        {"w48", 8, 4, {4, 8}},
      {"w228", 8, 4, {2, 2, 8}},   {"w237", 7, 4, {2, 3, 7}},    {"w147", 7, 4, {1, 4, 7}},
  };
  return tags;
}

inline const HwTag& hw_tag(const std::string& tag) {
  for (const auto& t : hw_tags()) {
    if (t.tag == tag) return t;
  }
  throw std::invalid_argument("unknown highest-weight vector tag '" + tag + "'");
}

/// Advertised weight of a tag as fundamental coordinates of sl_n
/// (lambda_n is trivial and drops out).
inline std::vector<int> hw_weight(const std::string& tag, int n) {
  std::vector<int> w(static_cast<std::size_t>(n - 1), 0);
  for (int i : hw_tag(tag).support) {
    if (i < n) ++w[static_cast<std::size_t>(i - 1)];
  }
  return w;
}

/// The symmetrized highest-weight vectors inside wedge^k(wedge^3 C^n).
inline MultiVector build_hw_vector(const std::string& tag, int n) {
  const HwTag& t = hw_tag(tag);
  if (n < t.min_n) throw std::invalid_argument(tag + " needs n >= " + std::to_string(t.min_n));
  MultiVector proto(n, 3, t.outer_degree);
  detail::Accumulator acc(proto);
  using detail::for_each_perm;
  if (tag == "w6") {
    for_each_perm(6, [&](const std::vector<int>& s, int sg) {
      acc.add({{s[0], s[1], s[2]}, {s[3], s[4], s[5]}}, sg);
    });
  } else if (tag == "w24") {
    acc.add({{1, 2, 3}, {1, 2, 4}}, 1);
  } else if (tag == "w48") {
    std::vector<std::pair<std::vector<int>, int>> taus;
    for_each_perm(8, [&](const std::vector<int>& p, int sg) { taus.emplace_back(p, sg); });
    for_each_perm(4, [&](const std::vector<int>& s, int ss) {
      for (const auto& [t8, st] : taus) {
        acc.add({{s[0], t8[0], t8[1]}, {s[1], t8[2], t8[3]}, {s[2], t8[4], t8[5]}, {s[3], t8[6], t8[7]}}, ss * st);
      }
    });
  } else if (tag == "w228") {
    for_each_perm(8, [&](const std::vector<int>& s, int sg) {
      acc.add({{1, 2, s[0]}, {1, 2, s[1]}, {s[2], s[3], s[4]}, {s[5], s[6], s[7]}}, sg);
    });
  } else if (tag == "w237") {
    for_each_perm(7, [&](const std::vector<int>& s, int sg) {
      acc.add({{1, 2, 3}, {1, 2, s[0]}, {s[1], s[2], s[3]}, {s[4], s[5], s[6]}}, sg);
    });
  } else if (tag == "w147") {
    std::vector<std::pair<std::vector<int>, int>> taus;
    for_each_perm(7, [&](const std::vector<int>& p, int sg) { taus.emplace_back(p, sg); });
    for_each_perm(4, [&](const std::vector<int>& s, int ss) {
      for (const auto& [t7, st] : taus) {
        acc.add({{1, s[0], t7[0]}, {s[1], s[2], s[3]}, {t7[1], t7[2], t7[3]}, {t7[4], t7[5], t7[6]}}, ss * st);
      }
    });
  }
  return acc.result();
}

/// Rank of the skew form of a bivector in wedge^2 W.
inline std::size_t skew_rank(const MultiVector& x) {
  if (x.outer_degree() != 2) throw std::invalid_argument("skew_rank needs outer degree 2");
  // only rows/columns in the support matter
  std::map<int, std::size_t> idx;
  for (const auto& [k, c] : x.terms()) {
    idx.emplace(k[0], 0);
    idx.emplace(k[1], 0);
  }
  std::size_t i = 0;
  for (auto& [key, pos] : idx) pos = i++;
  Matrix m = zero_matrix(idx.size(), idx.size());
  for (const auto& [k, c] : x.terms()) {
    std::size_t a = idx[k[0]], b = idx[k[1]];
    m[a][b] += c;
    m[b][a] -= c;
  }
  return matrix_rank(std::move(m));
}

/// "e123^e124" style rendering of a basis word.
inline std::string key_label(const MultiVector& x, const OuterKey& k) {
  std::ostringstream os;
  for (int i = 0; i < k.size(); ++i) {
    if (i) os << "^";
    os << "e";
    for (int v : x.basis().indices(k[i])) os << (x.n() > 9 ? "_" : "") << v;
  }
  return os.str();
}

}  // namespace folia
