#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uas/access_structure.hpp"
#include "uas/lp.hpp"
#include "uas/rational.hpp"

namespace uas {

// theorem7_structure(n) needs k + n participants.
inline constexpr int kCertificateCap = 119;

struct BoundReport {
  std::string structure_id;
  std::optional<Rational> lp_bound;          // exact LP optimum
  std::optional<double> lp_bound_float;      // external float route, conservative
  std::optional<Rational> certificate_bound;
  std::vector<std::string> notes;

  Rational best() const;
};

// Validates an independent-sequence certificate against the structure:
// the b's are distinct and outside A0, every C_i sits inside A0, every
// B_i C_i is independent and every B_{i+1} C_i qualified. Returns the
// sequence length n. Throws InvalidCertificate naming the first
// violated condition and its step.
int check_certificate(const AccessStructure& structure, const Certificate& cert);

// n / |A0| after validation.
Rational certificate_bound(const AccessStructure& structure, const Certificate& cert);

// Exact test of bound >= n / (1 + log2 n), done on integers:
// for bound p/q this is 2^(nq - p) <= n^p.
bool meets_log_bound(const Rational& bound, int n);

// Best available lower bound for the universal structure on n minimal
// sets: the independent-sequence certificate always, the entropy LP
// optimum when the structure fits the LP cap.
BoundReport universal_lower_bound(int n, bool use_lp = true);

}  // namespace uas
