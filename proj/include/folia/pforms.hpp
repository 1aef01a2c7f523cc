#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folia/linalg.hpp"
#include "folia/scalar.hpp"

namespace folia {

/// Monomial x^a times dx_I; variables x_0..x_n, I a bitmask.
struct FormKey {
  static constexpr int kMaxVars = 16;
  std::array<std::uint8_t, kMaxVars> exps{};
  std::uint32_t dx = 0;

  friend bool operator==(const FormKey& a, const FormKey& b) { return a.dx == b.dx && a.exps == b.exps; }
  friend bool operator<(const FormKey& a, const FormKey& b) {
    if (a.exps != b.exps) return a.exps > b.exps;
    return a.dx < b.dx;
  }
};

/// Polynomial differential p-form on P^n with exact coefficients. All
/// monomials have the same total degree.
class PolyForm {
 public:
  PolyForm(int n, int p, int degree) : n_(n), p_(p), d_(degree) {
    if (n < 0 || n + 1 > FormKey::kMaxVars) throw std::invalid_argument("PolyForm supports n <= 15");
    if (p < 0 || p > n + 1) throw std::invalid_argument("form degree out of range");
  }

  int n() const { return n_; }
  int p() const { return p_; }
  int poly_degree() const { return d_; }
  const std::map<FormKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * x^mono dx_{idx}; idx is sorted with sign, repeats vanish.
  void add(const std::vector<int>& mono, std::vector<int> idx, const Rational& c) {
    if (static_cast<int>(mono.size()) != n_ + 1) throw std::invalid_argument("monomial needs n+1 exponents");
    if (static_cast<int>(idx.size()) != p_) throw std::invalid_argument("dx tuple has wrong length");
    FormKey k;
    int deg = 0;
    for (int i = 0; i <= n_; ++i) {
      int e = mono[static_cast<std::size_t>(i)];
      if (e < 0 || e > 255) throw std::invalid_argument("bad exponent");
      k.exps[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
      deg += e;
    }
    if (deg != d_) throw std::invalid_argument("inhomogeneous monomial: degree " + std::to_string(deg) + " != " + std::to_string(d_));
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
      for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
        if (idx[j - 1] == idx[j]) return;
        std::swap(idx[j - 1], idx[j]);
        sign = -sign;
      }
    }
    for (int i : idx) {
      if (i < 0 || i > n_) throw std::invalid_argument("dx index out of range");
      k.dx |= 1u << i;
    }
    add_key(k, sign * c);
  }

  void add_key(const FormKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  PolyForm& operator+=(const PolyForm& o) {
    require_same_shape(o);
    for (const auto& [k, c] : o.terms_) add_key(k, c);
    return *this;
  }
  PolyForm& operator-=(const PolyForm& o) {
    require_same_shape(o);
    for (const auto& [k, c] : o.terms_) add_key(k, -c);
    return *this;
  }
  PolyForm scaled(const Rational& s) const {
    PolyForm r(n_, p_, d_);
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }
  friend bool operator==(const PolyForm& a, const PolyForm& b) {
    if (a.n_ != b.n_ || a.p_ != b.p_) return false;
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.d_ == b.d_ && a.terms_ == b.terms_;
  }

  /// Some s with *this == s * o, if one exists and o is nonzero.
  std::optional<Rational> ratio_to(const PolyForm& o) const {
    if (o.is_zero() || terms_.size() != o.terms_.size() || n_ != o.n_ || p_ != o.p_) return std::nullopt;
    if (is_zero()) return std::nullopt;
    Rational s = terms_.begin()->second / o.terms_.begin()->second;
    if (!(o.scaled(s) == *this)) return std::nullopt;
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      std::string cs = c.get_str();
      if (!s.empty()) s += (cs[0] == '-') ? " - " : " + ";
      else if (cs[0] == '-') s += "-";
      if (cs[0] == '-') cs.erase(0, 1);
      std::string body;
      for (int i = 0; i <= n_; ++i) {
        int e = k.exps[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        body += "x" + std::to_string(i);
        if (e > 1) body += "^" + std::to_string(e);
      }
      std::string dx;
      for (int i = 0; i <= n_; ++i) {
        if (k.dx >> i & 1u) dx += (dx.empty() ? "" : "^") + std::string("dx") + std::to_string(i);
      }
      std::string t = body;
      if (!dx.empty()) t += (t.empty() ? "" : " ") + dx;
      if (cs != "1" || t.empty()) t = cs + (t.empty() ? "" : " " + t);
      s += t;
    }
    return s;
  }

  void require_same_shape(const PolyForm& o) const {
    if (o.n_ != n_ || o.p_ != p_) throw std::invalid_argument("forms of different shape");
    if (o.d_ != d_ && !o.is_zero() && !is_zero()) throw std::invalid_argument("forms of different polynomial degree");
  }

 private:
  int n_, p_, d_;
  std::map<FormKey, Rational> terms_;
};

namespace detail {

inline int bits_below(std::uint32_t mask, int i) { return __builtin_popcount(mask & ((1u << i) - 1)); }

}  // namespace detail

/// Contraction with the radial field sum x_i d/dx_i.
inline PolyForm contract_radial(const PolyForm& w) {
  if (w.p() < 1) throw std::invalid_argument("contract_radial needs p >= 1");
  PolyForm r(w.n(), w.p() - 1, w.poly_degree() + 1);
  for (const auto& [k, c] : w.terms()) {
    for (int i = 0; i <= w.n(); ++i) {
      if (!(k.dx >> i & 1u)) continue;
      FormKey nk = k;
      nk.dx &= ~(1u << i);
      ++nk.exps[static_cast<std::size_t>(i)];
      r.add_key(nk, (detail::bits_below(k.dx, i) & 1) ? Rational(-c) : c);
    }
  }
  return r;
}

/// Interior product with the coordinate vector field d/dx_i.
inline PolyForm contract_basis(const PolyForm& w, int i) {
  if (w.p() < 1) throw std::invalid_argument("contraction needs p >= 1");
  PolyForm r(w.n(), w.p() - 1, w.poly_degree());
  for (const auto& [k, c] : w.terms()) {
    if (!(k.dx >> i & 1u)) continue;
    FormKey nk = k;
    nk.dx &= ~(1u << i);
    r.add_key(nk, (detail::bits_below(k.dx, i) & 1) ? Rational(-c) : c);
  }
  return r;
}

inline PolyForm exterior_derivative(const PolyForm& w) {
  if (w.p() > w.n()) return PolyForm(w.n(), w.p(), w.poly_degree());
  PolyForm r(w.n(), w.p() + 1, w.poly_degree() - 1);
  for (const auto& [k, c] : w.terms()) {
    for (int i = 0; i <= w.n(); ++i) {
      int e = k.exps[static_cast<std::size_t>(i)];
      if (e == 0 || (k.dx >> i & 1u)) continue;
      FormKey nk = k;
      --nk.exps[static_cast<std::size_t>(i)];
      nk.dx |= 1u << i;
      Rational v = c * e;
      r.add_key(nk, (detail::bits_below(k.dx, i) & 1) ? Rational(-v) : v);
    }
  }
  return r;
}

inline PolyForm wedge_forms(const PolyForm& a, const PolyForm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("wedge of forms on different spaces");
  if (a.p() + b.p() > a.n() + 1) return PolyForm(a.n(), a.p(), a.poly_degree());
  PolyForm r(a.n(), a.p() + b.p(), a.poly_degree() + b.poly_degree());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.dx & kb.dx) continue;
      FormKey k;
      for (std::size_t i = 0; i < k.exps.size(); ++i) {
        int e = ka.exps[i] + kb.exps[i];
        if (e > 255) throw std::overflow_error("exponent overflow");
        k.exps[i] = static_cast<std::uint8_t>(e);
      }
      k.dx = ka.dx | kb.dx;
      int inv = 0;
      for (int j = 0; j <= a.n(); ++j) {
        if (kb.dx >> j & 1u) inv += __builtin_popcount(ka.dx >> (j + 1));
      }
      Rational v = ca * cb;
      r.add_key(k, (inv & 1) ? Rational(-v) : v);
    }
  }
  return r;
}

/// omega ^ d omega for a twisted 1-form.
inline PolyForm psi_wedge_d(const PolyForm& w) {
  if (w.p() != 1) throw std::invalid_argument("psi needs a 1-form");
  if (!contract_radial(w).is_zero()) throw std::invalid_argument("psi needs a form killed by the radial contraction");
  return wedge_forms(w, exterior_derivative(w));
}

/// Polarization (omega ^ d eta + eta ^ d omega) / 2.
inline PolyForm psi_bilinear(const PolyForm& a, const PolyForm& b) {
  PolyForm r = wedge_forms(a, exterior_derivative(b));
  r += wedge_forms(b, exterior_derivative(a));
  return r.scaled(Rational(1, 2));
}

namespace detail {

inline void for_each_subset(int n, int k, int start, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == k) {
    f(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    for_each_subset(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

// Calls f(iota_u w) for every basis (p-1)-vector u.
inline void for_each_basis_contraction(const PolyForm& w, const std::function<void(const PolyForm&)>& f) {
  std::vector<int> cur;
  for_each_subset(w.n(), w.p() - 1, 0, cur, [&](const std::vector<int>& s) {
    PolyForm c = w;
    for (int i : s) c = contract_basis(c, i);
    f(c);
  });
}

}  // namespace detail

/// (iota_u omega) ^ omega = 0 for every u in the basis of wedge^{p-1}.
inline bool is_lds(const PolyForm& w) {
  if (w.p() < 1) throw std::invalid_argument("LDS needs p >= 1");
  bool ok = true;
  detail::for_each_basis_contraction(w, [&](const PolyForm& c) {
    if (ok && !wedge_forms(c, w).is_zero()) ok = false;
  });
  return ok;
}

/// LDS and (iota_u omega) ^ d omega = 0 for every basis u.
inline bool is_integrable(const PolyForm& w) {
  if (!is_lds(w)) return false;
  PolyForm dw = exterior_derivative(w);
  bool ok = true;
  detail::for_each_basis_contraction(w, [&](const PolyForm& c) {
    if (ok && !wedge_forms(c, dw).is_zero()) ok = false;
  });
  return ok;
}

/// Image of an element of S^d V (x) wedge^{p+1} V (stored as a (p+1)-form
/// whose dx_I stand for e_I) under the radial contraction.
inline PolyForm form_from_multivector(const PolyForm& x) { return contract_radial(x); }

/// (poly_degree + p) omega == iota_R d omega.
inline bool euler_identity_check(const PolyForm& w) {
  PolyForm lhs = w.scaled(w.poly_degree() + w.p());
  return lhs == contract_radial(exterior_derivative(w));
}

/// All exponent vectors of total degree d in n+1 variables.
inline std::vector<std::vector<int>> monomials(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n + 1), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(i)] = e;
      rec(i + 1, left - e);
    }
  };
  if (d >= 0) rec(0, d);
  return out;
}

/// Dimension of the kernel of the radial contraction on S^{d+1}V (x) wedge^p V,
/// i.e. of the twisted p-forms on P^n of polynomial degree d+1.
inline std::size_t radial_kernel_dimension(int n, int p, int d) {
  auto src_monos = monomials(n, d + 1);
  std::vector<std::vector<int>> src_dx;
  std::vector<int> cur;
  detail::for_each_subset(n, p, 0, cur, [&](const std::vector<int>& s) { src_dx.push_back(s); });
  std::map<FormKey, std::size_t> rows;
  std::vector<std::vector<std::pair<FormKey, Rational>>> cols;
  for (const auto& m : src_monos) {
    for (const auto& s : src_dx) {
      PolyForm e(n, p, d + 1);
      e.add(m, s, 1);
      std::vector<std::pair<FormKey, Rational>> col;
      PolyForm img = contract_radial(e);
      for (const auto& [k, c] : img.terms()) {
        rows.emplace(k, rows.size());
        col.emplace_back(k, c);
      }
      cols.push_back(std::move(col));
    }
  }
  Matrix a = zero_matrix(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [k, c] : cols[j]) a[rows.at(k)][j] = c;
  }
  return cols.size() - matrix_rank(std::move(a));
}

/// Random form with small integer coefficients and `terms` attempted terms.
inline PolyForm random_form(std::mt19937_64& rng, int n, int p, int degree, int terms) {
  PolyForm w(n, p, degree);
  auto monos = monomials(n, degree);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<std::size_t> pick_mono(0, monos.size() - 1);
  std::uniform_int_distribution<int> pick_var(0, n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx;
    while (static_cast<int>(idx.size()) < p) {
      int v = pick_var(rng);
      if (std::find(idx.begin(), idx.end(), v) == idx.end()) idx.push_back(v);
    }
    w.add(monos[pick_mono(rng)], idx, coeff(rng));
  }
  return w;
}

/// x_0^{l-2} (x_0 dx_1 - x_1 dx_0 + x_2 dx_3 - x_3 dx_2) on P^3.
inline PolyForm contact_power_form(int l) {
  if (l < 2) throw std::invalid_argument("need l >= 2");
  PolyForm w(3, 1, l - 1);
  auto mono = [&](int extra) {
    std::vector<int> m{l - 2, 0, 0, 0};
    ++m[static_cast<std::size_t>(extra)];
    return m;
  };
  w.add(mono(0), {1}, 1);
  w.add(mono(1), {0}, -1);
  w.add(mono(2), {3}, 1);
  w.add(mono(3), {2}, -1);
  return w;
}

}  // namespace folia
