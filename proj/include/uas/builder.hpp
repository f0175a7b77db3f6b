#pragma once

#include <cstdint>
#include <vector>

#include "uas/scheme.hpp"

namespace uas {

// Explicit construction stays desk-sized: share-map storage grows
// roughly with the square of the factorial secret size, which passes
// 6 GB at n = 7.
inline constexpr int kBuildCap = 6;
// Rank-based verification enumerates maximal independent sets; past
// n = 5 that is no longer minutes.
inline constexpr int kVerifyCap = 5;

struct BuildTrace {
  int n = 0;
  int secret_dim = 0;                        // (n-1)! bits
  std::vector<std::int64_t> class_bits;      // index i-1: share bits of class i
  std::vector<SeedBlock> manifest;           // seed blocks consumed per sub-scheme
};

// Scheme for the two-set normalized structure: both participants hold
// the one-bit secret.
LinearScheme base_u2();

// Census of the universal structure left after dropping the j-th
// minimal set (1-based) of the normalized structure on n_plus_1 sets:
// constant cells keep one participant, every other cell two.
CellCensus gamma_census(int n_plus_1, int j);

// One induction step: a perfect scheme for the normalized structure on
// n sets becomes one for n+1 sets via parity shadows and one expanded
// copy per dropped set. Checks the share-size recursion exactly.
LinearScheme lift(const LinearScheme& scheme_n, int n, bool verify_input = true);

struct BuildResult {
  LinearScheme scheme;
  BuildTrace trace;
};

// Iterated construction from the two-set base. Every intermediate
// level within the verification cap is rank-verified.
BuildResult build(int n);

// Share bits per class divided by the secret size; equals the
// closed-form profile.
std::vector<Rational> size_profile(const BuildTrace& trace);

}  // namespace uas
