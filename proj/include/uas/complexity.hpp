#pragma once

#include <cstdint>
#include <vector>

#include "uas/errors.hpp"
#include "uas/rational.hpp"

namespace uas {

// Harmonic sums in the convention h(1) = 0, h(n) = sum_{0<j<n} 1/j
// (the standard H_{n-1}).
class HarmonicTable {
 public:
  explicit HarmonicTable(int max_n = 1) { extend(max_n); }

  const Rational& value(int n) {
    if (n < 1) throw ValidationError("harmonic: n >= 1 required");
    extend(n);
    return h_[static_cast<std::size_t>(n)];
  }

  int max_n() const { return static_cast<int>(h_.size()) - 1; }

 private:
  void extend(int n);
  std::vector<Rational> h_ = {Rational(0)};  // index 0 unused
};

Rational harmonic(int n);

// Share-size profile f_n(i) = (n-i)(h(n)-h(n-i)) with f_n(0) = 0 and
// f_n(n) = 1.
Rational f_closed(int n, int i);
Rational f_closed(int n, int i, HarmonicTable& table);

// Same values through the recursion
//   n f_{n+1}(i) = (n+1-i) f_n(i) + i f_n(i-1),
// tabulated upward from f_2.
class FnTable {
 public:
  explicit FnTable(int max_n);
  const Rational& value(int n, int i) const;
  int max_n() const { return max_n_; }

 private:
  int max_n_;
  std::vector<std::vector<Rational>> rows_;  // rows_[n][i], n >= 2
};

Rational f_recursive(int n, int i);

struct SigmaResult {
  Rational max_value;
  int argmax = 0;  // smallest maximizing index
};

// Exact maximum of f_n over 1 <= i < n and its smallest maximizer,
// located by the sign change of f_n(i+1) - f_n(i) = h(n-i) + 1 - h(n).
// Cross-checked against a full scan for n <= 2000; for n > 10^4 the
// candidate comes from a float search and only the two neighboring
// differences are evaluated exactly.
SigmaResult sigma_upper(int n);
SigmaResult sigma_upper(int n, HarmonicTable& table);

// Certified check of max_i f_n(i) < n/e + 1/2. Exact rational
// comparison against the conservative (lower) bracket of 1/e up to
// n = 10^4; beyond that a compensated float evaluation with a 1e-6
// guard band (the float error is below 1e-9 for n <= 10^6).
bool ne_bound_check(int n);
bool ne_bound_check(int n, HarmonicTable& table);

// Predictor n - (n/e + (e-1)/(2e)) for the maximizing index.
double argmax_estimate(int n);

// Float argmax search: smallest i with h(n) - h(n-i) >= 1, summing
// 1/j downward from n-1 either naively or with Kahan compensation.
int argmax_float(std::int64_t n, bool compensated);

inline constexpr int kSigmaScanCrossCheckMax = 2000;
inline constexpr int kExactSigmaMax = 10'000;
inline constexpr std::int64_t kTableMaxN = 1'000'000;

}  // namespace uas
