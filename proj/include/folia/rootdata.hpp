#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "folia/irrdecomp.hpp"
#include "folia/scalar.hpp"
#include "folia/weight.hpp"

namespace folia {

/// One simple factor of a root system. `nodes` are indices into the parent
/// coordinate vector; for systems built from a type list they are contiguous.
struct Component {
  char type = 'A';
  int rank = 0;
  std::vector<int> nodes;

  std::string name() const { return std::string(1, type) + std::to_string(rank); }
};

class NotCominuscule : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<std::vector<int>> simple_cartan(char type, int r) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  auto link = [&](int i, int j, int aij = -1, int aji = -1) {
    a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = aij;
    a[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = aji;
  };
  for (int i = 0; i < r; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  switch (type) {
    case 'A':
      for (int i = 1; i < r; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 1; i < r - 1; ++i) link(i, i + 1);
      link(r - 1, r, -1, -2);
      break;
    case 'C':
      for (int i = 1; i < r - 1; ++i) link(i, i + 1);
      link(r - 1, r, -2, -1);
      break;
    case 'D':
      for (int i = 1; i < r - 1; ++i) link(i, i + 1);
      link(r - 2, r);
      break;
    case 'E':
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < r; ++i) link(i, i + 1);
      break;
    case 'F':
      link(1, 2);
      link(2, 3, -1, -2);
      link(3, 4);
      break;
    case 'G':
      link(1, 2, -3, -1);
      break;
    default:
      throw std::invalid_argument(std::string("unknown root system type '") + type + "'");
  }
  return a;
}

/// Half squared lengths of the simple roots, (alpha_i, alpha_i) / 2.
inline std::vector<int> simple_symmetrizer(char type, int r) {
  std::vector<int> d(static_cast<std::size_t>(r), 1);
  switch (type) {
    case 'B':
      std::fill(d.begin(), d.end(), 2);
      d.back() = 1;
      break;
    case 'C':
      d.back() = 2;
      break;
    case 'F':
      d = {2, 2, 1, 1};
      break;
    case 'G':
      d = {1, 3};
      break;
    default:
      break;
  }
  return d;
}

inline void validate_type(char type, int r) {
  bool ok = false;
  switch (type) {
    case 'A': ok = r >= 1; break;
    case 'B': ok = r >= 2; break;
    case 'C': ok = r >= 2; break;
    case 'D': ok = r >= 3; break;
    case 'E': ok = r >= 6 && r <= 8; break;
    case 'F': ok = r == 4; break;
    case 'G': ok = r == 2; break;
    default: break;
  }
  if (!ok) {
    throw std::invalid_argument("invalid root system " + std::string(1, type) + std::to_string(r));
  }
}

/// Identifies the Cartan type of a connected sub-diagram.
inline Component classify(const std::vector<std::vector<int>>& cartan, const std::vector<int>& d,
                          std::vector<int> nodes) {
  const int n = static_cast<int>(nodes.size());
  Component c;
  c.rank = n;
  c.nodes = nodes;
  if (n == 1) {
    c.type = 'A';
    return c;
  }
  auto at = [&](int i, int j) {
    return cartan[static_cast<std::size_t>(nodes[static_cast<std::size_t>(i)])]
                 [static_cast<std::size_t>(nodes[static_cast<std::size_t>(j)])];
  };
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  int max_bond = 1, bi = -1, bj = -1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || at(i, j) == 0) continue;
      ++degree[static_cast<std::size_t>(i)];
      int bond = at(i, j) * at(j, i);
      if (bond > max_bond) {
        max_bond = bond;
        bi = i;
        bj = j;
      }
    }
  }
  if (max_bond == 3) {
    c.type = 'G';
    return c;
  }
  if (max_bond == 2) {
    if (n == 4 && degree[static_cast<std::size_t>(bi)] == 2 && degree[static_cast<std::size_t>(bj)] == 2) {
      c.type = 'F';
      return c;
    }
    int end = degree[static_cast<std::size_t>(bi)] == 1 ? bi : bj;
    int other = end == bi ? bj : bi;
    int d_end = d[static_cast<std::size_t>(nodes[static_cast<std::size_t>(end)])];
    int d_other = d[static_cast<std::size_t>(nodes[static_cast<std::size_t>(other)])];
    c.type = (n == 2 || d_end < d_other) ? 'B' : 'C';
    return c;
  }
  int branch = -1;
  for (int i = 0; i < n; ++i) {
    if (degree[static_cast<std::size_t>(i)] >= 3) branch = i;
  }
  if (branch < 0) {
    c.type = 'A';
    return c;
  }
  // arm lengths from the branch node
  std::vector<int> arms;
  for (int j = 0; j < n; ++j) {
    if (j == branch || at(branch, j) == 0) continue;
    int len = 1, prev = branch, cur = j;
    for (;;) {
      int next = -1;
      for (int t = 0; t < n; ++t) {
        if (t != cur && t != prev && at(cur, t) != 0) next = t;
      }
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) {
    c.type = 'D';
  } else {
    c.type = 'E';
  }
  return c;
}

}  // namespace detail

/// Root datum of a semisimple Lie algebra given as a product of simple
/// factors. Values are immutable and cheap to copy (shared storage).
class RootSystem {
 public:
  RootSystem() = default;

  /// Product of simple systems in the given order.
  static RootSystem build(const std::vector<std::pair<char, int>>& parts) {
    int total = 0;
    for (const auto& [t, r] : parts) {
      detail::validate_type(t, r);
      total += r;
    }
    if (total > Weight::kMaxRank) throw std::invalid_argument("total rank exceeds " + std::to_string(Weight::kMaxRank));
    std::vector<std::vector<int>> a(static_cast<std::size_t>(total), std::vector<int>(static_cast<std::size_t>(total), 0));
    std::vector<int> d(static_cast<std::size_t>(total), 1);
    std::vector<Component> comps;
    int off = 0;
    for (const auto& [t, r] : parts) {
      auto block = detail::simple_cartan(t, r);
      auto sym = detail::simple_symmetrizer(t, r);
      Component c;
      c.type = t;
      c.rank = r;
      for (int i = 0; i < r; ++i) {
        c.nodes.push_back(off + i);
        d[static_cast<std::size_t>(off + i)] = sym[static_cast<std::size_t>(i)];
        for (int j = 0; j < r; ++j) {
          a[static_cast<std::size_t>(off + i)][static_cast<std::size_t>(off + j)] =
              block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
      }
      comps.push_back(std::move(c));
      off += r;
    }
    std::vector<int> parents(static_cast<std::size_t>(total));
    std::iota(parents.begin(), parents.end(), 0);
    return RootSystem(std::move(comps), std::move(a), std::move(d), std::move(parents));
  }

  /// Parses "A7", "E6", "A2xA4" (factors separated by 'x').
  static RootSystem parse(const std::string& text) {
    std::vector<std::pair<char, int>> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
      if (tok.size() < 2 || !std::isupper(static_cast<unsigned char>(tok[0]))) {
        throw std::invalid_argument("malformed root system: '" + text + "'");
      }
      std::size_t pos = 0;
      int r = 0;
      try {
        r = std::stoi(tok.substr(1), &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed root system: '" + text + "'");
      }
      if (pos + 1 != tok.size()) throw std::invalid_argument("malformed root system: '" + text + "'");
      parts.emplace_back(tok[0], r);
    }
    if (parts.empty()) throw std::invalid_argument("empty root system");
    return build(parts);
  }

  int rank() const { return d_ ? d_->rank : 0; }
  const std::vector<Component>& components() const { return d_->components; }
  int cartan(int i, int j) const { return d_->cartan[idx(i)][idx(j)]; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return d_->cartan; }
  const std::vector<std::vector<Rational>>& inverse_cartan() const { return d_->inverse; }
  /// (alpha_i, alpha_i) / 2.
  int symmetrizer(int i) const { return d_->sym[idx(i)]; }
  /// Positive roots in simple-root coordinates, sorted by height.
  const std::vector<Weight>& positive_roots() const { return d_->roots; }
  /// Highest root of each component, fundamental-weight coordinates.
  const std::vector<Weight>& highest_roots() const { return d_->highest; }
  Weight weyl_vector() const {
    Weight w(rank());
    for (int i = 0; i < rank(); ++i) w.set(i, 1);
    return w;
  }
  /// For a Levi subsystem: parent index of each node; identity otherwise.
  const std::vector<int>& parent_nodes() const { return d_->parents; }

  std::string name() const {
    std::string s;
    for (const auto& c : d_->components) s += (s.empty() ? "" : "x") + c.name();
    return s.empty() ? "0" : s;
  }

  int component_of(int node) const {
    for (std::size_t c = 0; c < d_->components.size(); ++c) {
      const auto& ns = d_->components[c].nodes;
      if (std::find(ns.begin(), ns.end(), node) != ns.end()) return static_cast<int>(c);
    }
    throw std::out_of_range("node index out of range: " + std::to_string(node + 1));
  }

  /// Fundamental-weight coordinates of a root given in simple-root coordinates.
  Weight root_to_weight(const Weight& c) const {
    Weight w(rank());
    for (int i = 0; i < rank(); ++i) {
      int s = 0;
      for (int j = 0; j < rank(); ++j) s += cartan(i, j) * c[j];
      w.set(i, s);
    }
    return w;
  }

  /// Fundamental-weight coordinates of the simple root alpha_i.
  const Weight& simple_root(int i) const { return d_->simple[idx(i)]; }

  /// (mu, alpha) for alpha in simple-root coordinates: sum_j mu_j c_j D_j.
  std::int64_t pair_root(const Weight& mu, const Weight& alpha) const {
    std::int64_t s = 0;
    for (int j = 0; j < rank(); ++j) s += static_cast<std::int64_t>(mu[j]) * alpha[j] * d_->sym[idx(j)];
    return s;
  }

  /// The invariant form scaled by gram_scale() so that it is integral.
  std::int64_t pairing_scaled(const Weight& mu, const Weight& nu) const {
    require_rank(mu);
    require_rank(nu);
    std::int64_t s = 0;
    for (int i = 0; i < rank(); ++i) {
      if (mu[i] == 0) continue;
      for (int j = 0; j < rank(); ++j) {
        s = checked_add(s, checked_mul(static_cast<std::int64_t>(mu[i]) * nu[j], d_->gram_scaled[idx(i)][idx(j)]));
      }
    }
    return s;
  }
  std::int64_t gram_scale() const { return d_->gram_scale; }

  void require_rank(const Weight& w) const {
    if (w.rank() != rank()) {
      throw std::invalid_argument("weight rank " + std::to_string(w.rank()) + " does not match " + name());
    }
  }

 private:
  struct Data {
    int rank = 0;
    std::vector<Component> components;
    std::vector<std::vector<int>> cartan;
    std::vector<std::vector<Rational>> inverse;
    std::vector<int> sym;
    std::vector<Weight> roots;
    std::vector<Weight> highest;
    std::vector<Weight> simple;
    std::vector<int> parents;
    std::vector<std::vector<std::int64_t>> gram_scaled;
    std::int64_t gram_scale = 1;
  };

  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  RootSystem(std::vector<Component> comps, std::vector<std::vector<int>> a, std::vector<int> d,
             std::vector<int> parents) {
    auto data = std::make_shared<Data>();
    data->rank = static_cast<int>(a.size());
    data->components = std::move(comps);
    data->cartan = std::move(a);
    data->sym = std::move(d);
    data->parents = std::move(parents);
    d_ = data;
    data->inverse = invert(data->cartan);
    for (int i = 0; i < data->rank; ++i) {
      Weight c(data->rank);
      c.set(i, 1);
      data->simple.push_back(root_to_weight(c));
    }
    data->roots = generate_positive_roots();
    for (const auto& comp : data->components) {
      const Weight* best = nullptr;
      int best_h = -1;
      for (const auto& r : data->roots) {
        int h = 0;
        bool inside = true;
        for (int j = 0; j < data->rank; ++j) {
          if (r[j] == 0) continue;
          if (std::find(comp.nodes.begin(), comp.nodes.end(), j) == comp.nodes.end()) inside = false;
          h += r[j];
        }
        if (inside && h > best_h) {
          best_h = h;
          best = &r;
        }
      }
      data->highest.push_back(root_to_weight(*best));
    }
    // gram F_ij = D_i (A^{-1})_ij, scaled to integers
    BigInt lcm = 1;
    for (int i = 0; i < data->rank; ++i) {
      for (int j = 0; j < data->rank; ++j) {
        Rational f = data->inverse[idx(i)][idx(j)] * data->sym[idx(i)];
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), f.get_den_mpz_t());
      }
    }
    data->gram_scale = to_int64(lcm);
    data->gram_scaled.assign(idx(data->rank), std::vector<std::int64_t>(idx(data->rank), 0));
    for (int i = 0; i < data->rank; ++i) {
      for (int j = 0; j < data->rank; ++j) {
        Rational f = data->inverse[idx(i)][idx(j)] * data->sym[idx(i)] * lcm;
        data->gram_scaled[idx(i)][idx(j)] = to_int64(f);
      }
    }
  }

  static std::vector<std::vector<Rational>> invert(const std::vector<std::vector<int>>& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
      m[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) throw ConsistencyError("singular Cartan matrix");
      std::swap(m[piv], m[col]);
      Rational inv = 1 / m[col][col];
      for (auto& x : m[col]) x *= inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rational f = m[r][col];
        for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
      }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    }
    return inv;
  }

  // Root strings: if p is maximal with beta - p alpha_i a root, then
  // beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0.
  std::vector<Weight> generate_positive_roots() const {
    const int r = rank();
    absl::flat_hash_set<Weight> known;
    std::vector<Weight> all, layer;
    for (int i = 0; i < r; ++i) {
      Weight e(r);
      e.set(i, 1);
      layer.push_back(e);
      known.insert(e);
    }
    while (!layer.empty()) {
      all.insert(all.end(), layer.begin(), layer.end());
      std::vector<Weight> next;
      for (const auto& beta : layer) {
        for (int i = 0; i < r; ++i) {
          int pairing = 0;
          for (int j = 0; j < r; ++j) pairing += beta[j] * cartan(i, j);
          int p = 0;
          Weight down = beta;
          for (;;) {
            if (down[i] == 0) break;
            down.set(i, down[i] - 1);
            if (!known.contains(down)) break;
            ++p;
          }
          if (p - pairing > 0) {
            Weight up = beta;
            up.set(i, up[i] + 1);
            if (known.insert(up).second) next.push_back(up);
          }
        }
      }
      std::sort(next.begin(), next.end());
      layer = std::move(next);
    }
    return all;
  }

  friend RootSystem levi_subsystem(const RootSystem& rs, int k);

  std::shared_ptr<const Data> d_;
};

/// Free-function form of RootSystem::build.
inline RootSystem build_root_system(const std::vector<std::pair<char, int>>& parts) {
  return RootSystem::build(parts);
}

/// Invariant bilinear form, exact.
inline Rational pairing(const RootSystem& rs, const Weight& mu, const Weight& nu) {
  Rational q(rs.pairing_scaled(mu, nu), rs.gram_scale());
  q.canonicalize();
  return q;
}

/// A set of active nodes of a root system, acting on parent coordinates.
/// The full system has every node active; the Levi factor of a maximal
/// parabolic P_k drops node k. rho' is 1 on active nodes and 0 elsewhere,
/// which is all the dot action, Freudenthal and Weyl's formula need.
class Subdiagram {
 public:
  Subdiagram(RootSystem rs, std::vector<bool> active) : rs_(std::move(rs)), active_(std::move(active)) {
    if (static_cast<int>(active_.size()) != rs_.rank()) throw std::invalid_argument("active mask has wrong size");
    for (int i = 0; i < rs_.rank(); ++i) {
      if (active_[static_cast<std::size_t>(i)]) nodes_.push_back(i);
    }
    for (const auto& a : rs_.positive_roots()) {
      bool inside = true;
      for (int j = 0; j < rs_.rank(); ++j) {
        if (a[j] != 0 && !active_[static_cast<std::size_t>(j)]) inside = false;
      }
      if (inside) roots_.push_back(a);
    }
    rho_ = Weight(rs_.rank());
    for (int i : nodes_) rho_.set(i, 1);
  }

  static Subdiagram full(const RootSystem& rs) {
    return Subdiagram(rs, std::vector<bool>(static_cast<std::size_t>(rs.rank()), true));
  }

  static Subdiagram levi(const RootSystem& rs, int k) {
    if (k < 0 || k >= rs.rank()) throw std::out_of_range("node index out of range: " + std::to_string(k + 1));
    std::vector<bool> act(static_cast<std::size_t>(rs.rank()), true);
    act[static_cast<std::size_t>(k)] = false;
    return Subdiagram(rs, act);
  }

  const RootSystem& root_system() const { return rs_; }
  const std::vector<int>& nodes() const { return nodes_; }
  bool active(int i) const { return active_[static_cast<std::size_t>(i)]; }
  const std::vector<Weight>& positive_roots() const { return roots_; }
  const Weight& rho() const { return rho_; }

  bool is_dominant(const Weight& w) const {
    for (int i : nodes_) {
      if (w[i] < 0) return false;
    }
    return true;
  }

  void require_dominant(const Weight& w) const {
    rs_.require_rank(w);
    if (!is_dominant(w)) throw std::invalid_argument("weight " + w.str() + " is not dominant");
  }

  Weight reflect(const Weight& w, int i) const {
    return w - w[i] * rs_.simple_root(i);
  }

  /// Dominant conjugate and the parity of the reflections used.
  std::pair<Weight, int> dominant_conjugate(Weight w) const {
    int sign = 1;
    for (bool again = true; again;) {
      again = false;
      for (int i : nodes_) {
        if (w[i] < 0) {
          w = reflect(w, i);
          sign = -sign;
          again = true;
        }
      }
    }
    return {w, sign};
  }

  /// Weyl orbit of a dominant weight.
  std::vector<Weight> orbit(const Weight& dominant) const {
    std::vector<Weight> out{dominant};
    absl::flat_hash_set<Weight> seen{dominant};
    for (std::size_t head = 0; head < out.size(); ++head) {
      Weight w = out[head];
      for (int i : nodes_) {
        if (w[i] <= 0) continue;
        Weight s = reflect(w, i);
        if (seen.insert(s).second) out.push_back(s);
      }
    }
    return out;
  }

  /// Weyl dimension formula over the active positive roots.
  std::int64_t weyl_dim(const Weight& lambda) const {
    require_dominant(lambda);
    BigInt num = 1, den = 1;
    Weight shifted = lambda + rho_;
    for (const auto& a : roots_) {
      num *= rs_.pair_root(shifted, a);
      den *= rs_.pair_root(rho_, a);
    }
    if (num % den != 0) throw ConsistencyError("non-integral Weyl dimension");
    return to_int64(BigInt(num / den));
  }

  /// (nu + rho', nu + rho') scaled; ordering key for decompositions.
  std::int64_t shifted_norm(const Weight& nu) const {
    Weight s = nu + rho_;
    return rs_.pairing_scaled(s, s);
  }

 private:
  RootSystem rs_;
  std::vector<bool> active_;
  std::vector<int> nodes_;
  std::vector<Weight> roots_;
  Weight rho_;
};

inline std::int64_t weyl_dim(const RootSystem& rs, const Weight& lambda) {
  return Subdiagram::full(rs).weyl_dim(lambda);
}

inline bool is_dominant(const Weight& w) {
  for (int i = 0; i < w.rank(); ++i) {
    if (w[i] < 0) return false;
  }
  return true;
}

inline void require_node(const RootSystem& rs, int k) {
  if (k < 0 || k >= rs.rank()) throw std::out_of_range("node index out of range: " + std::to_string(k + 1));
}

inline bool is_pk_dominant(const Weight& w, int k) {
  for (int j = 0; j < w.rank(); ++j) {
    if (j != k && w[j] < 0) return false;
  }
  return true;
}

/// Product root system on the nodes other than k, with parent_nodes()
/// mapping each node back. Factor types are recognized from the diagram.
inline RootSystem levi_subsystem(const RootSystem& rs, int k) {
  require_node(rs, k);
  std::vector<int> keep;
  for (int i = 0; i < rs.rank(); ++i) {
    if (i != k) keep.push_back(i);
  }
  const std::size_t n = keep.size();
  std::vector<std::vector<int>> a(n, std::vector<int>(n));
  std::vector<int> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = rs.symmetrizer(keep[i]);
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rs.cartan(keep[i], keep[j]);
  }
  std::vector<int> comp_id(n, -1);
  std::vector<Component> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp_id[s] >= 0) continue;
    std::vector<int> members{static_cast<int>(s)};
    comp_id[s] = static_cast<int>(comps.size());
    for (std::size_t h = 0; h < members.size(); ++h) {
      for (std::size_t t = 0; t < n; ++t) {
        if (comp_id[t] < 0 && a[static_cast<std::size_t>(members[h])][t] != 0) {
          comp_id[t] = comp_id[s];
          members.push_back(static_cast<int>(t));
        }
      }
    }
    std::sort(members.begin(), members.end());
    comps.push_back(detail::classify(a, d, members));
  }
  std::vector<int> parents;
  for (int p : keep) parents.push_back(rs.parent_nodes()[static_cast<std::size_t>(p)]);
  return RootSystem(std::move(comps), std::move(a), std::move(d), std::move(parents));
}

/// Levi weight obtained by deleting coordinate k.
inline Weight restrict_to_levi(const Weight& w, int k) {
  std::vector<int> v;
  for (int i = 0; i < w.rank(); ++i) {
    if (i != k) v.push_back(w[i]);
  }
  return Weight(v);
}

/// rk(E_mu) <lambda_k, mu> / <lambda_k, lambda_k>.
inline std::int64_t c1_irreducible(const RootSystem& rs, int k, const Weight& mu) {
  require_node(rs, k);
  rs.require_rank(mu);
  if (!is_pk_dominant(mu, k)) throw std::invalid_argument("weight " + mu.str() + " is not P_k-dominant");
  std::int64_t rk = Subdiagram::levi(rs, k).weyl_dim(mu);
  Weight lk = Weight::fundamental(rs.rank(), k);
  Rational v = Rational(rk) * pairing(rs, mu, lk) / pairing(rs, lk, lk);
  if (v.get_den() != 1) throw ConsistencyError("non-integral first Chern class " + v.get_str());
  return to_int64(v);
}

/// Dual of a Levi weight, as -w0 of the Levi Weyl group (the opposite
/// of the lowest weight). On each factor this is the diagram automorphism.
inline Weight dual_levi_weight(const RootSystem& rs, int k, const Weight& lambda) {
  require_node(rs, k);
  rs.require_rank(lambda);
  if (!is_pk_dominant(lambda, k)) throw std::invalid_argument("weight " + lambda.str() + " is not P_k-dominant");
  Weight w = lambda;
  w.set(k, 0);
  auto [dual, sign] = Subdiagram::levi(rs, k).dominant_conjugate(-w);
  (void)sign;
  dual.set(k, 0);
  return dual;
}

/// Coefficient of alpha_k in the highest root of its component.
inline int highest_root_coefficient(const RootSystem& rs, int k) {
  require_node(rs, k);
  int c = rs.component_of(k);
  int best = 0, best_h = -1;
  for (const auto& r : rs.positive_roots()) {
    int h = 0;
    bool inside = true;
    for (int j = 0; j < rs.rank(); ++j) {
      if (r[j] != 0 && rs.component_of(j) != c) inside = false;
      h += r[j];
    }
    if (inside && h > best_h) {
      best_h = h;
      best = r[k];
    }
  }
  return best;
}

inline bool is_cominuscule(const RootSystem& rs, int k) {
  return rs.components().size() == 1 && highest_root_coefficient(rs, k) == 1;
}

/// Solved twist a with c1(E_{delta* + a lambda_k}) = -c1(E_delta).
inline Rational cotangent_twist(const RootSystem& rs, int k) {
  if (!is_cominuscule(rs, k)) {
    throw NotCominuscule(rs.name() + "/P" + std::to_string(k + 1) + " is not a cominuscule pair");
  }
  const Weight& delta = rs.highest_roots().front();
  Weight dstar = dual_levi_weight(rs, k, delta);
  Weight lk = Weight::fundamental(rs.rank(), k);
  std::int64_t c1_tangent = c1_irreducible(rs, k, delta);
  std::int64_t rk = Subdiagram::levi(rs, k).weyl_dim(dstar);
  Rational a = Rational(-c1_tangent, rk);
  a.canonicalize();
  return a - pairing(rs, dstar, lk) / pairing(rs, lk, lk);
}

/// Highest weight of the cotangent bundle of G/P_k, delta* - 2 lambda_k.
inline Weight cotangent_weight(const RootSystem& rs, int k) {
  Rational a = cotangent_twist(rs, k);
  if (a != -2) throw ConsistencyError("cotangent twist solved to " + a.get_str() + ", expected -2");
  Weight w = dual_levi_weight(rs, k, rs.highest_roots().front());
  w.set(k, -2);
  return w;
}

/// H^0 of the irreducible bundle E_lambda: V_lambda when lambda is
/// dominant, zero otherwise.
inline IrrDecomposition bbw_h0(const RootSystem& rs, const Weight& lambda, int k) {
  require_node(rs, k);
  rs.require_rank(lambda);
  if (!is_pk_dominant(lambda, k)) throw std::invalid_argument("weight " + lambda.str() + " is not P_k-dominant");
  IrrDecomposition d;
  if (lambda[k] >= 0) d.add(lambda, 1);
  return d;
}

/// Type-A helpers: coefficients of l_1..l_{r+1} (epsilon basis, last one 0)
/// and back.
inline std::vector<int> to_epsilon(const Weight& w) {
  std::vector<int> e(static_cast<std::size_t>(w.rank() + 1), 0);
  for (int i = w.rank() - 1; i >= 0; --i) e[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i + 1)] + w[i];
  return e;
}

inline Weight from_epsilon(const std::vector<int>& e) {
  if (e.empty()) throw std::invalid_argument("empty epsilon vector");
  Weight w(static_cast<int>(e.size()) - 1);
  for (int i = 0; i + 1 < static_cast<int>(e.size()); ++i) {
    w.set(i, e[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(i + 1)]);
  }
  return w;
}

}  // namespace folia
