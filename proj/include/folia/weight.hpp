#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <absl/hash/hash.h>

namespace folia {

/// Integer weight in the fundamental-weight basis of a (possibly product)
/// root system. Storage is inline; coordinates are kept in int8 and every
/// arithmetic result is range-checked.
class Weight {
 public:
  static constexpr int kMaxRank = 16;

  Weight() = default;

  explicit Weight(int rank) : rank_(static_cast<std::uint8_t>(check_rank(rank))) {}

  Weight(std::initializer_list<int> coords) : Weight(std::vector<int>(coords)) {}

  explicit Weight(const std::vector<int>& coords)
      : rank_(static_cast<std::uint8_t>(check_rank(static_cast<int>(coords.size())))) {
    for (int i = 0; i < rank(); ++i) set(i, coords[static_cast<std::size_t>(i)]);
  }

  static Weight fundamental(int rank, int index) {
    Weight w(rank);
    w.set(index, 1);
    return w;
  }

  int rank() const { return rank_; }
  int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  void set(int i, int value) {
    if (value < -127 || value > 127) throw std::overflow_error("weight coordinate out of int8 range");
    c_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(value);
  }

  std::vector<int> coords() const { return {c_.begin(), c_.begin() + rank_}; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.begin() + rank_, [](std::int8_t x) { return x == 0; });
  }

  Weight& operator+=(const Weight& o) {
    require_same_rank(o);
    for (int i = 0; i < rank(); ++i) set(i, (*this)[i] + o[i]);
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    require_same_rank(o);
    for (int i = 0; i < rank(); ++i) set(i, (*this)[i] - o[i]);
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(const Weight& a) {
    Weight r(a.rank());
    for (int i = 0; i < a.rank(); ++i) r.set(i, -a[i]);
    return r;
  }
  friend Weight operator*(int s, const Weight& a) {
    Weight r(a.rank());
    for (int i = 0; i < a.rank(); ++i) r.set(i, s * a[i]);
    return r;
  }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.rank_ == b.rank_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  /// Lexicographic order on coordinates; used only for deterministic output.
  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
    return a.c_ < b.c_;
  }

  template <typename H>
  friend H AbslHashValue(H h, const Weight& w) {
    return H::combine(H::combine_contiguous(std::move(h), w.c_.data(), w.rank_), w.rank_);
  }

  /// Comma-separated coordinates, e.g. "0,1,0,-2".
  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < rank(); ++i) os << (i ? "," : "") << (*this)[i];
    return os.str();
  }

  static Weight parse(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t pos = 0;
      int x = 0;
      try {
        x = std::stoi(tok, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed weight: '" + text + "'");
      }
      while (pos < tok.size() && tok[pos] == ' ') ++pos;
      if (pos != tok.size()) throw std::invalid_argument("malformed weight: '" + text + "'");
      v.push_back(x);
    }
    if (v.empty()) throw std::invalid_argument("empty weight");
    return Weight(v);
  }

 private:
  static int check_rank(int r) {
    if (r < 0 || r > kMaxRank) throw std::invalid_argument("weight rank out of range");
    return r;
  }
  void require_same_rank(const Weight& o) const {
    if (o.rank_ != rank_) throw std::invalid_argument("weight rank mismatch");
  }

  std::array<std::int8_t, kMaxRank> c_{};
  std::uint8_t rank_ = 0;
};

/// Human-readable form in fundamental weights, e.g. "l2+2l4" ("0" for zero).
inline std::string weight_label(const Weight& w) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < w.rank(); ++i) {
    int a = w[i];
    if (a == 0) continue;
    if (a < 0) os << "-";
    else if (!first) os << "+";
    if (std::abs(a) != 1) os << std::abs(a);
    os << "l" << (i + 1);
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace folia
