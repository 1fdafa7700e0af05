#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace imwak {

// Exact rational coefficient field. No floating point is used anywhere in the
// library; every identity is checked with tolerance zero.
using Scalar = mpq_class;

inline Scalar rat(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p", or "p/q" (base 10). Throws std::invalid_argument on
// malformed input or a zero denominator.
inline Scalar parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

// Canonical textual form: "p/q" with q > 0 and gcd(p,q)=1, or just "p" when
// q = 1. Used by every report and CLI output.
inline std::string to_string(const Scalar& q) { return q.get_str(); }

}  // namespace imwak
