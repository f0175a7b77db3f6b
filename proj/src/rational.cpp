#include "uas/rational.hpp"

#include "uas/errors.hpp"

namespace uas {

Rational parse_fraction(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0)
    throw ValidationError("not a rational: '" + text + "'");
  if (q.get_den() == 0) throw ValidationError("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

Rational reciprocal_range_sum(std::uint64_t a, std::uint64_t b) {
  if (a >= b) return Rational(0);
  if (a == 0) throw ValidationError("reciprocal_range_sum: range must start at 1");
  if (b - a <= 8) {
    Rational sum(0);
    for (std::uint64_t j = a; j < b; ++j) {
      Rational term(1);
      term /= Rational(static_cast<unsigned long>(j));
      sum += term;
    }
    return sum;
  }
  std::uint64_t mid = a + (b - a) / 2;
  return reciprocal_range_sum(a, mid) + reciprocal_range_sum(mid, b);
}

const RationalBracket& inv_e_bracket() {
  static const RationalBracket bracket = [] {
    // e = sum 1/k!; truncating after k = 25 leaves a tail below 2/26!.
    Rational e_lo(0);
    Rational term(1);
    for (int k = 1; k <= 25; ++k) {
      e_lo += term;
      term /= k;
    }
    e_lo += term;  // k = 25 term
    Rational e_hi = e_lo + 2 * (term / 26);
    return RationalBracket{1 / e_hi, 1 / e_lo};
  }();
  return bracket;
}

}  // namespace uas
