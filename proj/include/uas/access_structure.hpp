#pragma once

#include <cstdint>
#include <vector>

#include "uas/subsets.hpp"

namespace uas {

// Cell pattern over the minimal qualified sets: bit i-1 is the
// membership indicator for the i-th minimal set (least significant bit
// first).
using Pattern = std::uint32_t;

// Per-cell participant counts with respect to n minimal sets.
struct CellCensus {
  int n = 0;                         // number of minimal sets
  std::vector<std::uint64_t> counts; // indexed by pattern, size 2^n

  std::uint64_t total() const;
  bool is_universal() const;   // every cell inhabited
  bool is_normalized() const;  // one participant per non-constant cell, none elsewhere

  Pattern all_ones() const { return static_cast<Pattern>((1u << n) - 1); }
};

// Returns the inclusion-minimal members, deduplicated, in canonical
// order (ascending cardinality, ties by mask value). Rejects empty
// input and empty member sets.
std::vector<Subset> minimal_antichain(const std::vector<Subset>& sets);

// Monotone access structure given by its minimal qualified sets.
class AccessStructure {
 public:
  // Canonicalizes `sets` through minimal_antichain. With strict=true the
  // input must already be a canonical antichain.
  AccessStructure(int participant_count, std::vector<Subset> sets, bool strict = false);

  int participant_count() const { return m_; }
  int minimal_set_count() const { return static_cast<int>(minimal_sets_.size()); }
  const std::vector<Subset>& minimal_sets() const { return minimal_sets_; }

  bool is_qualified(Subset subset) const;

  bool operator==(const AccessStructure& other) const {
    return m_ == other.m_ && minimal_sets_ == other.minimal_sets_;
  }

 private:
  int m_ = 0;
  std::vector<Subset> minimal_sets_;
};

// Membership pattern of one participant across the minimal sets.
Pattern participant_pattern(const AccessStructure& structure, int participant);

CellCensus cell_census(const AccessStructure& structure);

// Normalized universal structure: one participant per non-constant
// pattern, 2^n - 2 participants, participant p carries pattern p + 1.
AccessStructure universal_normalized(int n);

// Universal structure defined by a census: participants grouped by
// cell, cells in ascending pattern order.
AccessStructure structure_from_census(const CellCensus& census);
// Cell pattern of each participant of structure_from_census, in order.
std::vector<Pattern> census_cells(const CellCensus& census);

// The inclusion-maximal unqualified subsets, canonical order. Computed
// as complements of the minimal transversals of the minimal-set
// hypergraph.
std::vector<Subset> maximal_independent_sets(const AccessStructure& structure);

// Independent-sequence certificate data.
struct Certificate {
  Subset a0 = 0;
  std::vector<int> b_sequence;     // participants outside a0, in order
  std::vector<Subset> c_sequence;  // one subset of a0 per step
};

// Lower-bound structure with n minimal sets over k + n participants
// (a_1..a_k = 0..k-1, b_1..b_n = k..k+n-1), with its certificate.
struct Theorem7Result {
  AccessStructure structure;
  Certificate certificate;
  int k = 0;
};
Theorem7Result theorem7_structure(int n);

}  // namespace uas
