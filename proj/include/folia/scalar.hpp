#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace folia {

/// Exact rational scalar used by every coefficient-bearing structure.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Thrown when exact integer bookkeeping would leave the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Thrown when a computed value contradicts an algebraic invariant
/// (non-integral quotient, negative multiplicity, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

inline std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw OverflowError("integer does not fit in int64: " + z.get_str());
  return z.get_si();
}

inline std::int64_t to_int64(const Rational& q) {
  if (q.get_den() != 1) throw ConsistencyError("expected an integer, got " + q.get_str());
  return to_int64(BigInt(q.get_num()));
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: '" + s + "'");
  q.canonicalize();
  return q;
}

/// Binomial coefficient C(n, k) with overflow checking; 0 outside 0 <= k <= n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return to_int64(r);
}

}  // namespace folia
