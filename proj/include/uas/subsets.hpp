#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uas {

// Participant subsets as bitmasks. 128 bits so the certificate
// constructions (k + n participants, n up to 119) fit in one value.
using Subset = unsigned __int128;

inline constexpr int kMaxParticipants = 126;

constexpr Subset subset_bit(int i) { return Subset{1} << i; }

constexpr Subset subset_universe(int m) {
  return m == 0 ? Subset{0} : (((Subset{1} << (m - 1)) << 1) - 1);
}

constexpr bool subset_test(Subset s, int i) { return (s >> i) & 1; }

constexpr bool subset_contains(Subset outer, Subset inner) {
  return (inner & ~outer) == 0;
}

constexpr bool subset_proper(Subset inner, Subset outer) {
  return inner != outer && subset_contains(outer, inner);
}

inline int subset_size(Subset s) {
  return __builtin_popcountll(static_cast<std::uint64_t>(s)) +
         __builtin_popcountll(static_cast<std::uint64_t>(s >> 64));
}

inline int subset_lowest(Subset s) {
  auto lo = static_cast<std::uint64_t>(s);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<std::uint64_t>(s >> 64));
}

// Canonical order used throughout: ascending cardinality, ties by
// numeric value of the mask.
inline bool subset_canonical_less(Subset a, Subset b) {
  int ca = subset_size(a), cb = subset_size(b);
  if (ca != cb) return ca < cb;
  return a < b;
}

inline std::vector<int> subset_to_indices(Subset s) {
  std::vector<int> out;
  while (s != 0) {
    int i = subset_lowest(s);
    out.push_back(i);
    s &= s - 1;
  }
  return out;
}

inline Subset subset_from_indices(const std::vector<int>& indices) {
  Subset s = 0;
  for (int i : indices) s |= subset_bit(i);
  return s;
}

inline std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i : subset_to_indices(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace uas
