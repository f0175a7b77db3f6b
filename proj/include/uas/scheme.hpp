#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uas/access_structure.hpp"
#include "uas/bit_matrix.hpp"
#include "uas/rational.hpp"

namespace uas {

// Caps: exhaustive seed enumeration stays below a minute.
inline constexpr int kBruteForceSeedCap = 24;

// Deterministic bit source for dealing.
class BitRng {
 public:
  explicit BitRng(std::uint64_t seed) : engine_(seed) {}
  bool next() {
    if (left_ == 0) {
      buffer_ = engine_();
      left_ = 64;
    }
    bool b = buffer_ & 1;
    buffer_ >>= 1;
    --left_;
    return b;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  int left_ = 0;
};

// Named range of seed coordinates, for reproducible deal transcripts.
struct SeedBlock {
  std::string label;
  int offset = 0;
  int length = 0;
};

// Linear scheme over the two-element field: all shares and the secret
// are linear images of one uniform seed vector. public_rows are seed
// functions whose values every subset sees (used when shares are made
// public by a reduction).
struct LinearScheme {
  int seed_dim = 0;
  int secret_dim = 0;
  BitMatrix secret_map;                // secret_dim x seed_dim, full row rank
  std::vector<BitMatrix> share_maps;   // one per participant, cols == seed_dim
  BitMatrix public_rows;               // 0 x seed_dim unless shares were published
  std::vector<SeedBlock> seed_blocks;  // manifest of the seed layout

  int participant_count() const { return static_cast<int>(share_maps.size()); }
  int share_size(int p) const { return share_maps[static_cast<std::size_t>(p)].rows(); }
  int max_share_size() const;
  Rational complexity() const;  // max share size / secret size

  // Dimension and rank invariants; throws ValidationError on violation.
  void validate() const;
};

enum class VerifyMethod { kRankBased, kBruteForce };

struct PerfectnessReport {
  bool correct = false;
  bool is_private = false;
  std::optional<Subset> failing_set;
  VerifyMethod method = VerifyMethod::kRankBased;

  bool perfect() const { return correct && is_private; }
};

// k participants, secret of `unit` bits; shares r_1..r_{k-1} free and
// r_k closing the XOR to the secret.
LinearScheme kofk_additive(int k, int unit);

// The k-of-k access structure (single minimal set of all participants).
AccessStructure kofk_structure(int k);

// n+1 shadow maps for a secret of n unit-blocks: shadow j < n selects
// block j, shadow n is the XOR of all blocks. Any n shadows determine
// the secret.
std::vector<BitMatrix> parity_shadows(int n, int unit);

// Seed with the secret coordinates fixed through a right inverse of
// secret_map and the kernel coordinates taken from free_bits
// (filling all seed_dim - secret_dim of them).
BitVec seed_from_parts(const LinearScheme& scheme, const BitVec& secret, const BitVec& free_bits);

BitVec deal_seed(const LinearScheme& scheme, const BitVec& secret, BitRng& rng);

std::vector<BitVec> shares_from_seed(const LinearScheme& scheme, const BitVec& seed);

std::vector<BitVec> deal(const LinearScheme& scheme, const BitVec& secret, BitRng& rng);

// Recovers the secret from the shares of `subset` (vectors in ascending
// participant order). public_values must carry the public_rows values
// when the scheme has any. Throws NotQualified when the subset cannot
// determine the secret, InconsistentShares when no seed matches.
BitVec reconstruct(const LinearScheme& scheme, Subset subset, const std::vector<BitVec>& shares,
                   const BitVec& public_values = BitVec());

// Exact rank-based perfectness verification: every minimal qualified
// set spans the secret rows; every maximal independent set is linearly
// independent of them.
PerfectnessReport verify_perfect(const LinearScheme& scheme, const AccessStructure& structure);

// Independent oracle: enumerates all 2^seed_dim seeds and checks exact
// determination / exact statistical independence on the joint tables.
PerfectnessReport brute_force_verify(const LinearScheme& scheme, const AccessStructure& structure);

// Claim-style expansion: scheme for the normalized structure on n sets
// lifted to the universal structure whose participants carry the given
// cell patterns. Fresh k-of-k layers re-deal each multi-member cell;
// an inhabited all-ones cell receives a one-time-pad split of the
// secret. label_prefix names the fresh seed blocks.
LinearScheme expand_to_cells(const LinearScheme& scheme, const std::vector<Pattern>& cells,
                             int n, const std::string& label_prefix = "expand");

LinearScheme expand_to_universal(const LinearScheme& scheme, const CellCensus& census);

// Inverse reduction: keep one representative per non-constant cell and
// publish every other share.
LinearScheme restrict_to_cells(const LinearScheme& scheme, const std::vector<Pattern>& cells,
                               int n);

LinearScheme restrict_to_normalized(const LinearScheme& scheme, const CellCensus& census);

}  // namespace uas
