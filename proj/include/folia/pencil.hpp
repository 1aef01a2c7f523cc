#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "folia/extalg.hpp"
#include "folia/linalg.hpp"
#include "folia/scalar.hpp"

namespace folia {

/// Element of the exterior algebra of C^N keyed by index bitmasks (bit i-1
/// for e_i), homogeneous or not.
using ExtElem = std::map<std::uint32_t, Rational>;

namespace detail {

inline int mask_wedge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int inv = 0;
  for (int j = 0; j < 32; ++j) {
    if (b >> j & 1u) inv += __builtin_popcount(a >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

inline void ext_add(ExtElem& e, std::uint32_t k, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = e.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

}  // namespace detail

inline ExtElem ext_wedge(const ExtElem& a, const ExtElem& b) {
  ExtElem r;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      int s = detail::mask_wedge_sign(ka, kb);
      if (s != 0) detail::ext_add(r, ka | kb, s * ca * cb);
    }
  }
  return r;
}

/// Plain multivector (inner degree 1) as an ExtElem.
inline ExtElem to_ext(const MultiVector& x) {
  if (x.inner_degree() != 1) throw std::invalid_argument("expected a multivector over C^N (inner degree 1)");
  ExtElem r;
  for (const auto& [k, c] : x.terms()) {
    std::uint32_t m = 0;
    for (int i = 0; i < k.size(); ++i) m |= 1u << k[i];
    detail::ext_add(r, m, c);
  }
  return r;
}

inline MultiVector from_ext(const ExtElem& e, int big_n, int degree) {
  MultiVector r(big_n, 1, degree);
  for (const auto& [m, c] : e) {
    if (__builtin_popcount(m) != degree) throw std::invalid_argument("inhomogeneous element");
    std::vector<int> ranks;
    for (int i = 0; i < big_n; ++i) {
      if (m >> i & 1u) ranks.push_back(i);
    }
    r.add_ranks(ranks, c);
  }
  return r;
}

/// Bivector sum_{i<j} m_ij e_i ^ e_j of a skew matrix.
inline ExtElem bivector_of(const Matrix& m) {
  ExtElem r;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) detail::ext_add(r, (1u << i) | (1u << j), m[i][j]);
  }
  return r;
}

inline Matrix skew_matrix_of(const ExtElem& b, std::size_t dim) {
  Matrix m = zero_matrix(dim, dim);
  for (const auto& [k, c] : b) {
    if (__builtin_popcount(k) != 2) throw std::invalid_argument("not a bivector");
    int i = __builtin_ctz(k), j = 31 - __builtin_clz(k);
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -c;
  }
  return m;
}

inline std::string ext_str(const ExtElem& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e) {
    std::string cs = c.get_str();
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (cs != "1" || m == 0) os << cs << (m ? "*" : "");
    bool firstidx = true;
    for (int i = 0; i < 32; ++i) {
      if (!(m >> i & 1u)) continue;
      os << (firstidx ? "e" : "^e") << i + 1;
      firstidx = false;
    }
  }
  return os.str();
}

/// Regular skew pencil A + tB = sum of blocks B(a_i, lambda_i), each
/// [[0, M], [-M^T, 0]] with M = (a+t) Delta_m + Lambda_m.
struct SkewPencil {
  int n = 0;
  std::vector<int> partition;
  std::vector<Rational> values;
  Matrix a, b;
  ExtElem v, w;

  int dim() const { return 2 * n; }
};

inline SkewPencil build_canonical_pencil(const std::vector<int>& partition, const std::vector<Rational>& values) {
  if (partition.empty()) throw std::invalid_argument("empty partition");
  if (partition.size() != values.size()) throw std::invalid_argument("need one value per part");
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i] < 1) throw std::invalid_argument("partition parts must be positive");
    if (i && partition[i] > partition[i - 1]) throw std::invalid_argument("partition must be non-increasing");
  }
  SkewPencil p;
  p.partition = partition;
  p.values = values;
  p.n = std::accumulate(partition.begin(), partition.end(), 0);
  if (p.n > 16) throw std::invalid_argument("pencil too large");
  const auto dim = static_cast<std::size_t>(2 * p.n);
  p.a = zero_matrix(dim, dim);
  p.b = zero_matrix(dim, dim);
  std::size_t off = 0;
  for (std::size_t blk = 0; blk < partition.size(); ++blk) {
    const auto m = static_cast<std::size_t>(partition[blk]);
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        Rational t0 = 0, t1 = 0;
        if (i + j == m + 1) {
          t0 = values[blk];
          t1 = 1;
        }
        if (i >= 2 && i + j == m + 2) t0 = 1;
        std::size_t r = off + i - 1, c = off + m + j - 1;
        p.a[r][c] = t0;
        p.a[c][r] = -t0;
        p.b[r][c] = t1;
        p.b[c][r] = -t1;
      }
    }
    off += 2 * m;
  }
  p.v = bivector_of(p.a);
  p.w = bivector_of(p.b);
  return p;
}

/// Basis of the r-subsets of {0..N-1} as masks, lexicographic.
inline std::vector<std::uint32_t> subset_masks(int big_n, int r) {
  auto basis = SubsetBasis::get(big_n, r);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < basis->size(); ++i) out.push_back(basis->mask(i));
  return out;
}

/// K_z^r: kernel of x -> x ^ z on wedge^r C^N.
struct KSet {
  int r = 0;
  std::vector<std::uint32_t> subsets;
  std::vector<Vector> basis;

  ExtElem element(std::size_t i) const {
    ExtElem e;
    for (std::size_t j = 0; j < subsets.size(); ++j) detail::ext_add(e, subsets[j], basis[i][j]);
    return e;
  }
};

inline std::int64_t& kset_cap() {
  static std::int64_t cap = 924;
  return cap;
}

inline KSet kset_basis(const ExtElem& z, int big_n, int r) {
  int k = -1;
  for (const auto& [m, c] : z) {
    int d = __builtin_popcount(m);
    if (k >= 0 && d != k) throw std::invalid_argument("K-set needs a homogeneous element");
    k = d;
  }
  if (r < 0 || r > big_n) throw std::invalid_argument("degree out of range");
  if (binomial(big_n, r) > kset_cap()) {
    throw std::length_error("K-set dimension C(" + std::to_string(big_n) + "," + std::to_string(r) + ") exceeds cap");
  }
  KSet ks;
  ks.r = r;
  ks.subsets = subset_masks(big_n, r);
  if (k < 0 || r + k > big_n) {
    for (std::size_t i = 0; i < ks.subsets.size(); ++i) {
      Vector e(ks.subsets.size());
      e[i] = 1;
      ks.basis.push_back(std::move(e));
    }
    return ks;
  }
  auto rows = subset_masks(big_n, r + k);
  std::map<std::uint32_t, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);
  Matrix m = zero_matrix(rows.size(), ks.subsets.size());
  for (std::size_t j = 0; j < ks.subsets.size(); ++j) {
    for (const auto& [zm, c] : z) {
      int s = detail::mask_wedge_sign(ks.subsets[j], zm);
      if (s != 0) m[row_of.at(ks.subsets[j] | zm)][j] += s * c;
    }
  }
  ks.basis = kernel_basis(std::move(m), ks.subsets.size());
  return ks;
}

inline KSet kset_basis(const MultiVector& z, int r) { return kset_basis(to_ext(z), z.n(), r); }

inline bool top_power_nonzero(const ExtElem& w, int n) {
  ExtElem p{{0u, Rational(1)}};
  for (int i = 0; i < n; ++i) p = ext_wedge(p, w);
  return !p.empty();
}

/// w | v^v via the K-set criterion K_w^{2n-4} in K_{v^v}^{2n-4}.
inline bool divides_wedge_square(const ExtElem& w, const ExtElem& v, int n) {
  if (!top_power_nonzero(w, n)) throw std::invalid_argument("criterion needs w^n != 0");
  if (n < 2) return true;
  ExtElem vv = ext_wedge(v, v);
  KSet kw = kset_basis(w, 2 * n, 2 * n - 4);
  for (std::size_t i = 0; i < kw.basis.size(); ++i) {
    if (!ext_wedge(kw.element(i), vv).empty()) return false;
  }
  return true;
}

/// Direct test: does v^v = w^x have a solution x in wedge^2?
inline bool solvable_wedge_square(const ExtElem& w, const ExtElem& v, int n) {
  const int big_n = 2 * n;
  if (big_n < 4) return true;
  ExtElem vv = ext_wedge(v, v);
  auto cols = subset_masks(big_n, 2);
  auto rows = subset_masks(big_n, 4);
  std::map<std::uint32_t, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);
  Matrix m = zero_matrix(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [wm, c] : w) {
      int s = detail::mask_wedge_sign(wm, cols[j]);
      if (s != 0) m[row_of.at(wm | cols[j])][j] += s * c;
    }
  }
  Vector rhs(rows.size());
  for (const auto& [k, c] : vv) rhs[row_of.at(k)] = c;
  return solve(m, rhs, cols.size()).has_value();
}

struct Lemma56Report {
  std::vector<int> partition;
  std::vector<Rational> values;
  int n = 0;
  bool divides = false;
  bool solvable = false;
  bool predicted = false;
  std::optional<Rational> a;
  ExtElem y;
  ExtElem witness;
  Rational witness_value;
  std::vector<std::string> elementary_divisors;
  bool ok = false;
  std::string detail;
};

/// Whether the structure lemma predicts w | v^v for a canonical pencil:
/// all parts 1 with at least n-1 equal values, or (2,1,...,1) with all
/// values equal.
inline bool lemma56_predicts_division(const std::vector<int>& partition, const std::vector<Rational>& values) {
  const int n = std::accumulate(partition.begin(), partition.end(), 0);
  if (n <= 2) return true;
  if (partition[0] >= 3 || (partition.size() > 1 && partition[1] >= 2)) return false;
  if (partition[0] == 2) {
    return std::all_of(values.begin(), values.end(), [&](const Rational& x) { return x == values[0]; });
  }
  std::map<Rational, int> count;
  for (const auto& x : values) ++count[x];
  for (const auto& [x, c] : count) {
    if (c >= n - 1) return true;
  }
  return false;
}

inline Lemma56Report verify_lemma56(const std::vector<int>& partition, const std::vector<Rational>& values) {
  SkewPencil p = build_canonical_pencil(partition, values);
  Lemma56Report rep;
  rep.partition = partition;
  rep.values = values;
  rep.n = p.n;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    rep.elementary_divisors.push_back("(" + values[i].get_str() + "+t)^" + std::to_string(2 * partition[i]));
  }
  if (determinant(p.b) == 0) {
    rep.detail = "det B = 0";
    return rep;
  }
  rep.divides = divides_wedge_square(p.w, p.v, p.n);
  rep.solvable = solvable_wedge_square(p.w, p.v, p.n);
  rep.predicted = lemma56_predicts_division(partition, values);
  if (rep.divides) {
    std::vector<Rational> cands = values;
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& a : cands) {
      ExtElem y = p.v;
      for (const auto& [k, c] : p.w) detail::ext_add(y, k, -a * c);
      if (ext_wedge(y, y).empty()) {
        rep.a = a;
        rep.y = y;
        break;
      }
    }
    if (!rep.a) rep.detail = "w divides v^v but no a among the values gives y^y = 0";
  } else if (p.n >= 2) {
    ExtElem vv = ext_wedge(p.v, p.v);
    const int big_n = 2 * p.n;
    const std::uint32_t full = big_n >= 32 ? ~0u : ((1u << big_n) - 1);
    // prefer a monomial witness: a complement of four indices
    for (std::uint32_t four : subset_masks(big_n, 4)) {
      ExtElem phi{{full & ~four, Rational(1)}};
      if (!ext_wedge(phi, p.w).empty()) continue;
      ExtElem top = ext_wedge(phi, vv);
      if (!top.empty()) {
        rep.witness = phi;
        rep.witness_value = top.begin()->second;
        break;
      }
    }
    if (rep.witness.empty()) {
      KSet kw = kset_basis(p.w, big_n, big_n - 4);
      for (std::size_t i = 0; i < kw.basis.size(); ++i) {
        ExtElem phi = kw.element(i);
        ExtElem top = ext_wedge(phi, vv);
        if (!top.empty()) {
          rep.witness = phi;
          rep.witness_value = top.begin()->second;
          break;
        }
      }
    }
    if (rep.witness.empty()) rep.detail = "criterion failed but no witness found";
  }
  bool consistent = rep.divides == rep.solvable && rep.divides == rep.predicted;
  bool certified = rep.divides ? rep.a.has_value() : !rep.witness.empty();
  rep.ok = consistent && certified;
  if (!consistent && rep.detail.empty()) {
    rep.detail = std::string("divides=") + (rep.divides ? "1" : "0") + " solvable=" + (rep.solvable ? "1" : "0") +
                 " predicted=" + (rep.predicted ? "1" : "0");
  }
  return rep;
}

/// Congruence transform (P^T A P, P^T B P) of the bivectors of a pencil.
inline std::pair<ExtElem, ExtElem> congruent_pair(const SkewPencil& p, const Matrix& q) {
  Matrix qt = transpose(q);
  return {bivector_of(multiply(qt, multiply(p.a, q))), bivector_of(multiply(qt, multiply(p.b, q)))};
}

/// Random invertible matrix with small integer entries (unit triangular product).
inline Matrix random_invertible(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> d(-2, 2);
  Matrix l = zero_matrix(dim, dim), u = zero_matrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    l[i][i] = 1;
    u[i][i] = 1;
    for (std::size_t j = 0; j < i; ++j) {
      l[i][j] = d(rng);
      u[j][i] = d(rng);
    }
  }
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix pm = zero_matrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) pm[i][perm[i]] = 1;
  return multiply(pm, multiply(l, u));
}

}  // namespace folia
