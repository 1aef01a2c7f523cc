#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "folia/weight.hpp"

namespace folia {

/// Integer variables available to registry templates (n, k, d, r, ...).
using Vars = std::map<std::string, std::int64_t>;

namespace detail {

class IntParser {
 public:
  IntParser(const std::string& s, const Vars& vars) : s_(s), vars_(vars) {}

  std::int64_t parse() {
    std::int64_t v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad integer expression '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::int64_t expr() {
    std::int64_t v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  std::int64_t term() {
    std::int64_t v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        std::int64_t d = factor();
        if (d == 0 || v % d != 0) fail("inexact division");
        v /= d;
      } else {
        return v;
      }
    }
  }
  std::int64_t factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('(')) {
      std::int64_t v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::int64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
      return v;
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::string name;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) name += s_[pos_++];
      auto it = vars_.find(name);
      if (it == vars_.end()) fail("unknown variable '" + name + "'");
      return it->second;
    }
    fail("unexpected character");
  }

  const std::string& s_;
  const Vars& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::int64_t eval_int(const std::string& expr, const Vars& vars) {
  return detail::IntParser(expr, vars).parse();
}

/// Replaces every {expr} by its integer value.
inline std::string substitute(const std::string& tmpl, const Vars& vars) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    std::size_t j = tmpl.find('}', i);
    if (j == std::string::npos) throw std::invalid_argument("unbalanced '{' in '" + tmpl + "'");
    out += std::to_string(eval_int(tmpl.substr(i + 1, j - i - 1), vars));
    i = j + 1;
  }
  return out;
}

/// Parses "l2+2l4", "3*l1-2*l3", "0" or a coordinate list "0,1,0". Index
/// conventions: l0 and l_{rank+1} are zero; any other index out of range
/// kills the whole term (nullopt).
inline std::optional<Weight> parse_weight_expr(const std::string& text, int rank) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty weight expression");
  if (s.find('l') == std::string::npos) {
    if (s == "0") return Weight(rank);
    Weight w = Weight::parse(s);
    if (w.rank() != rank) throw std::invalid_argument("weight '" + text + "' has wrong rank");
    return w;
  }
  Weight w(rank);
  bool killed = false;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw std::invalid_argument("bad weight expression '" + text + "': " + why); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-'");
    }
    int coeff = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coeff = coeff * 10 + (s[i++] - '0');
      if (i < s.size() && s[i] == '*') ++i;
    }
    if (i >= s.size() || s[i] != 'l') {
      if (coeff == 0) continue;
      fail("expected 'l<index>'");
    }
    ++i;
    bool negative = i < s.size() && s[i] == '-';
    if (negative) ++i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("missing index");
    int idx = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx = idx * 10 + (s[i++] - '0');
    if (negative) idx = -idx;
    if (idx == 0 || idx == rank + 1) continue;
    if (idx < 0 || idx > rank + 1) {
      killed = true;
      continue;
    }
    w.set(idx - 1, w[idx - 1] + sign * coeff);
  }
  if (killed) return std::nullopt;
  return w;
}

/// Weight expression with template substitution.
inline std::optional<Weight> eval_weight(const std::string& tmpl, const Vars& vars, int rank) {
  return parse_weight_expr(substitute(tmpl, vars), rank);
}

}  // namespace folia
