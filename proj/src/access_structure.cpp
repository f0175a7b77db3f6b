#include "uas/access_structure.hpp"

#include <algorithm>

#include "uas/errors.hpp"

namespace uas {

std::uint64_t CellCensus::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

bool CellCensus::is_universal() const {
  for (auto c : counts)
    if (c == 0) return false;
  return true;
}

bool CellCensus::is_normalized() const {
  for (Pattern eps = 0; eps < counts.size(); ++eps) {
    bool constant = (eps == 0) || (eps == all_ones());
    if (constant && counts[eps] != 0) return false;
    if (!constant && counts[eps] != 1) return false;
  }
  return true;
}

std::vector<Subset> minimal_antichain(const std::vector<Subset>& sets) {
  if (sets.empty()) throw ValidationError("minimal_antichain: empty input");
  for (Subset s : sets)
    if (s == 0) throw ValidationError("minimal_antichain: empty member set");
  std::vector<Subset> sorted = sets;
  std::sort(sorted.begin(), sorted.end(), subset_canonical_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Subset> out;
  for (Subset s : sorted) {
    bool dominated = false;
    for (Subset kept : out)
      if (subset_contains(s, kept)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(s);
  }
  return out;
}

AccessStructure::AccessStructure(int participant_count, std::vector<Subset> sets, bool strict)
    : m_(participant_count) {
  if (m_ < 1) throw ValidationError("access structure needs at least one participant");
  if (m_ > kMaxParticipants)
    throw CapError("participant count " + std::to_string(m_) + " exceeds cap " +
                   std::to_string(kMaxParticipants));
  std::vector<Subset> canon = minimal_antichain(sets);
  if (strict && canon != sets)
    throw ValidationError("minimal sets are not a canonical antichain");
  for (Subset s : canon)
    if (!subset_contains(subset_universe(m_), s))
      throw ValidationError("minimal set mentions a participant outside 0.." +
                            std::to_string(m_ - 1));
  minimal_sets_ = std::move(canon);
}

bool AccessStructure::is_qualified(Subset subset) const {
  for (Subset s : minimal_sets_)
    if (subset_contains(subset, s)) return true;
  return false;
}

Pattern participant_pattern(const AccessStructure& structure, int participant) {
  Pattern eps = 0;
  const auto& sets = structure.minimal_sets();
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (subset_test(sets[i], participant)) eps |= Pattern{1} << i;
  return eps;
}

CellCensus cell_census(const AccessStructure& structure) {
  int n = structure.minimal_set_count();
  if (n > 30) throw CapError("cell census over more than 30 minimal sets");
  CellCensus census;
  census.n = n;
  census.counts.assign(std::size_t{1} << n, 0);
  for (int p = 0; p < structure.participant_count(); ++p)
    ++census.counts[participant_pattern(structure, p)];
  return census;
}

AccessStructure universal_normalized(int n) {
  if (n < 2) throw ValidationError("universal structure needs n >= 2");
  std::uint64_t m = (std::uint64_t{1} << n) - 2;
  if (m > kMaxParticipants)
    throw CapError("universal structure with n=" + std::to_string(n) +
                   " exceeds the participant cap");
  // Participant p carries pattern p + 1.
  std::vector<Subset> sets(n, 0);
  for (std::uint64_t p = 0; p < m; ++p) {
    Pattern eps = static_cast<Pattern>(p + 1);
    for (int i = 0; i < n; ++i)
      if ((eps >> i) & 1) sets[i] |= subset_bit(static_cast<int>(p));
  }
  return AccessStructure(static_cast<int>(m), std::move(sets));
}

AccessStructure structure_from_census(const CellCensus& census) {
  std::uint64_t m = census.total();
  if (m < 1) throw ValidationError("census has no participants");
  if (m > kMaxParticipants) throw CapError("census participant count exceeds cap");
  std::vector<Subset> sets(census.n, 0);
  std::vector<Pattern> cells = census_cells(census);
  for (std::size_t p = 0; p < cells.size(); ++p)
    for (int i = 0; i < census.n; ++i)
      if ((cells[p] >> i) & 1) sets[i] |= subset_bit(static_cast<int>(p));
  return AccessStructure(static_cast<int>(m), std::move(sets));
}

std::vector<Pattern> census_cells(const CellCensus& census) {
  std::vector<Pattern> cells;
  cells.reserve(census.total());
  for (Pattern eps = 0; eps < census.counts.size(); ++eps)
    for (std::uint64_t c = 0; c < census.counts[eps]; ++c) cells.push_back(eps);
  return cells;
}

namespace {

// Keeps only inclusion-minimal masks.
void prune_non_minimal(std::vector<Subset>& sets) {
  std::sort(sets.begin(), sets.end(), subset_canonical_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<Subset> out;
  for (Subset s : sets) {
    bool dominated = false;
    for (Subset kept : out)
      if (subset_contains(s, kept)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(s);
  }
  sets = std::move(out);
}

}  // namespace

std::vector<Subset> maximal_independent_sets(const AccessStructure& structure) {
  // Sequential minimal-transversal construction over the minimal sets.
  std::vector<Subset> transversals{Subset{0}};
  for (Subset edge : structure.minimal_sets()) {
    std::vector<Subset> next;
    for (Subset t : transversals) {
      if ((t & edge) != 0) {
        next.push_back(t);
        continue;
      }
      Subset rest = edge;
      while (rest != 0) {
        int v = subset_lowest(rest);
        rest &= rest - 1;
        next.push_back(t | subset_bit(v));
      }
    }
    prune_non_minimal(next);
    if (next.size() > 2'000'000) throw CapError("transversal enumeration too large");
    transversals = std::move(next);
  }
  Subset universe = subset_universe(structure.participant_count());
  std::vector<Subset> out;
  out.reserve(transversals.size());
  for (Subset t : transversals) out.push_back(universe & ~t);
  std::sort(out.begin(), out.end(), subset_canonical_less);
  return out;
}

Theorem7Result theorem7_structure(int n) {
  if (n < 2) throw ValidationError("theorem7_structure needs n >= 2");
  // Smallest k with n <= 2^k - 1.
  int k = 1;
  while (((std::uint64_t{1} << k) - 1) < static_cast<std::uint64_t>(n)) ++k;
  if (k + n > kMaxParticipants)
    throw CapError("theorem7_structure(" + std::to_string(n) + ") exceeds participant cap");

  // Proper subsets of X = {0..k-1} in decreasing order: non-increasing
  // cardinality, ties by ascending mask value.
  std::vector<Subset> proper;
  Subset x_mask = subset_universe(k);
  for (Subset c = 0; c < x_mask; ++c) proper.push_back(c);
  std::sort(proper.begin(), proper.end(), [](Subset a, Subset b) {
    int ca = subset_size(a), cb = subset_size(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });

  std::vector<Subset> sets;
  Certificate cert;
  cert.a0 = x_mask;
  Subset b_mask = 0;
  for (int i = 0; i < n; ++i) {
    int b_i = k + i;  // participant b_{i+1}
    cert.b_sequence.push_back(b_i);
    cert.c_sequence.push_back(proper[i]);
    b_mask |= subset_bit(b_i);
    sets.push_back(b_mask | proper[i]);  // B_{i+1} C_i
  }
  AccessStructure structure(k + n, sets, /*strict=*/false);
  if (structure.minimal_set_count() != n)
    throw ValidationError("theorem7_structure: constructed sets not an antichain");
  return Theorem7Result{std::move(structure), std::move(cert), k};
}

}  // namespace uas
