#include "uas/complexity.hpp"

#include <algorithm>
#include <cmath>

namespace uas {

void HarmonicTable::extend(int n) {
  while (static_cast<int>(h_.size()) <= n) {
    std::size_t next = h_.size();  // computing h(next)
    if (next == 1) {
      h_.push_back(Rational(0));
    } else {
      Rational step(1, static_cast<unsigned long>(next - 1));
      step.canonicalize();
      h_.push_back(h_.back() + step);
    }
  }
}

Rational harmonic(int n) {
  if (n < 1) throw ValidationError("harmonic: n >= 1 required");
  return reciprocal_range_sum(1, static_cast<std::uint64_t>(n));
}

static void check_f_range(int n, int i) {
  if (n < 2) throw ValidationError("f_n: n >= 2 required");
  if (i < 0 || i > n) throw ValidationError("f_n: index out of range");
}

Rational f_closed(int n, int i, HarmonicTable& table) {
  check_f_range(n, i);
  if (i == 0) return Rational(0);
  if (i == n) return Rational(1);
  return (table.value(n) - table.value(n - i)) * (n - i);
}

Rational f_closed(int n, int i) {
  HarmonicTable table(n < 1 ? 1 : n);
  return f_closed(n, i, table);
}

FnTable::FnTable(int max_n) : max_n_(max_n) {
  if (max_n < 2) throw ValidationError("FnTable: max_n >= 2 required");
  rows_.resize(static_cast<std::size_t>(max_n) + 1);
  rows_[2] = {Rational(0), Rational(1), Rational(1)};  // f_2
  for (int n = 2; n < max_n; ++n) {
    std::vector<Rational> next(static_cast<std::size_t>(n) + 2);
    next[0] = Rational(0);
    next[static_cast<std::size_t>(n) + 1] = Rational(1);
    for (int i = 1; i <= n; ++i)
      next[static_cast<std::size_t>(i)] =
          (rows_[n][static_cast<std::size_t>(i)] * (n + 1 - i) +
           rows_[n][static_cast<std::size_t>(i - 1)] * i) /
          n;
    rows_[static_cast<std::size_t>(n) + 1] = std::move(next);
  }
}

const Rational& FnTable::value(int n, int i) const {
  check_f_range(n, i);
  if (n > max_n_) throw ValidationError("FnTable: n beyond table");
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

Rational f_recursive(int n, int i) {
  check_f_range(n, i);
  FnTable table(n);
  return table.value(n, i);
}

namespace {

// Sign of the difference f_n(i+1) - f_n(i) = h(n-i) + 1 - h(n),
// valid for 0 <= i <= n-2.
int diff_sign(int n, int i, HarmonicTable& table) {
  Rational d = table.value(n - i) + 1 - table.value(n);
  return sgn(d);
}

// Same sign without the full table: 1 - sum_{j=n-i}^{n-1} 1/j.
int diff_sign_exact_range(std::int64_t n, std::int64_t i) {
  Rational s = reciprocal_range_sum(static_cast<std::uint64_t>(n - i),
                                    static_cast<std::uint64_t>(n));
  return sgn(Rational(1) - s);
}

int smallest_argmax_from_table(int n, HarmonicTable& table) {
  // Differences are strictly decreasing; the smallest maximizer is the
  // first i with difference <= 0 (or n-1 when all are positive).
  int lo = 1, hi = n - 1;  // invariant: answer in [lo, hi]
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;  // mid <= n-2 here
    if (diff_sign(n, mid, table) <= 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

SigmaResult sigma_upper(int n, HarmonicTable& table) {
  if (n < 2) throw ValidationError("sigma_upper: n >= 2 required");
  if (n == 2) return {Rational(1), 1};

  if (n <= kExactSigmaMax) {
    int istar = smallest_argmax_from_table(n, table);
    SigmaResult result{f_closed(n, istar, table), istar};
    if (n <= kSigmaScanCrossCheckMax) {
      SigmaResult scan{Rational(0), 0};
      for (int i = 1; i < n; ++i) {
        Rational v = f_closed(n, i, table);
        if (scan.argmax == 0 || v > scan.max_value) scan = {v, i};
      }
      if (scan.max_value != result.max_value || scan.argmax != result.argmax)
        throw ValidationError("sigma_upper: scan cross-check failed");
    }
    return result;
  }

  // Large n: locate the candidate with compensated float summation,
  // then pin it down with exact sign evaluations of the two
  // neighboring differences only.
  std::int64_t cand = argmax_float(n, /*compensated=*/true);
  while (cand > 1 && diff_sign_exact_range(n, cand - 1) <= 0) --cand;
  while (cand < n - 1 && diff_sign_exact_range(n, cand) > 0) ++cand;
  Rational max_value =
      reciprocal_range_sum(static_cast<std::uint64_t>(n - cand),
                           static_cast<std::uint64_t>(n)) *
      Rational(static_cast<long>(n - cand));
  return {max_value, static_cast<int>(cand)};
}

SigmaResult sigma_upper(int n) {
  HarmonicTable table(std::min(n, kExactSigmaMax));
  return sigma_upper(n, table);
}

bool ne_bound_check(int n, HarmonicTable& table) {
  if (n < 2) throw ValidationError("ne_bound_check: n >= 2 required");
  const RationalBracket& inv_e = inv_e_bracket();
  if (n <= kExactSigmaMax) {
    SigmaResult sigma = sigma_upper(n, table);
    // Conservative side: certify against the lower bracket of n/e + 1/2.
    Rational bound = inv_e.lo * n + Rational(1, 2);
    return sigma.max_value < bound;
  }
  // Float path. Kahan summation keeps the absolute error of the
  // maximum below ~1e-9 for n <= 10^6; a 1e-6 guard band absorbs it.
  std::int64_t istar = argmax_float(n, /*compensated=*/true);
  long double sum = 0.0L, comp = 0.0L;
  for (std::int64_t j = n - istar; j < n; ++j) {
    long double term = 1.0L / static_cast<long double>(j);
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  long double max_f = static_cast<long double>(n - istar) * sum;
  long double bound = static_cast<long double>(n) * to_double(inv_e.lo) + 0.5L;
  return max_f < bound - 1e-6L;
}

bool ne_bound_check(int n) {
  HarmonicTable table(std::min(n, kExactSigmaMax));
  return ne_bound_check(n, table);
}

double argmax_estimate(int n) {
  if (n < 2) throw ValidationError("argmax_estimate: n >= 2 required");
  double e = std::exp(1.0);
  return n - (n / e + (e - 1) / (2 * e));
}

int argmax_float(std::int64_t n, bool compensated) {
  if (n < 2) throw ValidationError("argmax_float: n >= 2 required");
  if (n > kTableMaxN) throw CapError("argmax_float: n beyond 10^6 cap");
  // Smallest i with sum_{j=n-i}^{n-1} 1/j >= 1.
  double sum = 0.0, comp = 0.0;
  for (std::int64_t j = n - 1; j >= 1; --j) {
    double term = 1.0 / static_cast<double>(j);
    if (compensated) {
      double y = term - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    } else {
      sum += term;
    }
    if (sum >= 1.0) return static_cast<int>(n - j);
  }
  return static_cast<int>(n - 1);
}

}  // namespace uas
