#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace uas {

// Exact arbitrary-precision rational. GMP keeps values canonical
// (reduced, positive denominator) under arithmetic.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Canonical fraction string, e.g. "3/2", "11/6", "1".
inline std::string to_fraction_string(const Rational& q) { return q.get_str(); }

// Accepts "p/q" or "p".
Rational parse_fraction(const std::string& text);

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact sum of 1/j for a <= j < b (binary splitting; fast for wide ranges).
Rational reciprocal_range_sum(std::uint64_t a, std::uint64_t b);

// Certified rational bracket lo < 1/e < hi with hi - lo < 1e-20,
// derived from partial sums of the series for e with a tail bound.
struct RationalBracket {
  Rational lo;
  Rational hi;
};
const RationalBracket& inv_e_bracket();

}  // namespace uas
