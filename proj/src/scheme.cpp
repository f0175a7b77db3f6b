#include "uas/scheme.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "uas/errors.hpp"

namespace uas {

int LinearScheme::max_share_size() const {
  int mx = 0;
  for (const auto& m : share_maps) mx = std::max(mx, m.rows());
  return mx;
}

Rational LinearScheme::complexity() const {
  Rational q(max_share_size(), secret_dim);
  q.canonicalize();
  return q;
}

void LinearScheme::validate() const {
  if (seed_dim < 1) throw ValidationError("scheme: seed_dim must be positive");
  if (secret_dim < 1) throw ValidationError("scheme: secret_dim must be positive");
  if (secret_map.rows() != secret_dim || secret_map.cols() != seed_dim)
    throw ValidationError("scheme: secret_map dimensions mismatch");
  if (gf2_rank(secret_map) != secret_dim)
    throw ValidationError("scheme: secret_map does not have full row rank");
  for (const auto& m : share_maps)
    if (m.cols() != seed_dim) throw ValidationError("scheme: share map width mismatch");
  if (public_rows.rows() > 0 && public_rows.cols() != seed_dim)
    throw ValidationError("scheme: public rows width mismatch");
}

LinearScheme kofk_additive(int k, int unit) {
  if (k < 1) throw ValidationError("kofk_additive: k >= 1 required");
  if (unit < 1) throw ValidationError("kofk_additive: unit >= 1 required");
  LinearScheme s;
  s.secret_dim = unit;
  s.seed_dim = k * unit;  // secret block + k-1 free blocks
  s.secret_map = BitMatrix(unit, s.seed_dim);
  for (int j = 0; j < unit; ++j) s.secret_map.set(j, j, true);
  s.seed_blocks.push_back({"secret", 0, unit});
  for (int p = 0; p + 1 < k; ++p)
    s.seed_blocks.push_back({"pad" + std::to_string(p + 1), (p + 1) * unit, unit});
  for (int p = 0; p < k; ++p) {
    BitMatrix share(unit, s.seed_dim);
    if (p + 1 < k) {
      for (int j = 0; j < unit; ++j) share.set(j, (p + 1) * unit + j, true);
    } else {
      // Last share closes the sum: s xor r_1 xor ... xor r_{k-1}.
      for (int j = 0; j < unit; ++j)
        for (int b = 0; b < k; ++b) share.set(j, b * unit + j, true);
    }
    s.share_maps.push_back(std::move(share));
  }
  return s;
}

AccessStructure kofk_structure(int k) {
  return AccessStructure(k, {subset_universe(k)});
}

std::vector<BitMatrix> parity_shadows(int n, int unit) {
  if (n < 1) throw ValidationError("parity_shadows: n >= 1 required");
  if (unit < 1) throw ValidationError("parity_shadows: unit >= 1 required");
  std::vector<BitMatrix> shadows;
  for (int j = 0; j < n; ++j) {
    BitMatrix m(unit, n * unit);
    for (int b = 0; b < unit; ++b) m.set(b, j * unit + b, true);
    shadows.push_back(std::move(m));
  }
  BitMatrix parity(unit, n * unit);
  for (int b = 0; b < unit; ++b)
    for (int j = 0; j < n; ++j) parity.set(b, j * unit + b, true);
  shadows.push_back(std::move(parity));
  return shadows;
}

BitVec seed_from_parts(const LinearScheme& scheme, const BitVec& secret, const BitVec& free_bits) {
  if (secret.size() != scheme.secret_dim)
    throw ValidationError("deal: secret length mismatch");
  auto rinv = gf2_right_inverse(scheme.secret_map);
  if (!rinv) throw ValidationError("deal: secret map not full row rank");
  BitVec seed = rinv->multiply(secret);
  BitMatrix kernel = gf2_null_basis(scheme.secret_map);
  if (free_bits.size() != kernel.rows())
    throw ValidationError("deal: free bit count mismatch");
  for (int i = 0; i < kernel.rows(); ++i)
    if (free_bits.get(i)) {
      for (int c = 0; c < scheme.seed_dim; ++c)
        if (kernel.get(i, c)) seed.flip(c);
    }
  return seed;
}

BitVec deal_seed(const LinearScheme& scheme, const BitVec& secret, BitRng& rng) {
  BitVec free_bits(scheme.seed_dim - scheme.secret_dim);
  for (int i = 0; i < free_bits.size(); ++i) free_bits.set(i, rng.next());
  return seed_from_parts(scheme, secret, free_bits);
}

std::vector<BitVec> shares_from_seed(const LinearScheme& scheme, const BitVec& seed) {
  std::vector<BitVec> shares;
  shares.reserve(scheme.share_maps.size());
  for (const auto& m : scheme.share_maps) shares.push_back(m.multiply(seed));
  return shares;
}

std::vector<BitVec> deal(const LinearScheme& scheme, const BitVec& secret, BitRng& rng) {
  return shares_from_seed(scheme, deal_seed(scheme, secret, rng));
}

namespace {

// Stacked share maps of a subset (ascending), with public rows last.
BitMatrix stack_for_subset(const LinearScheme& scheme, Subset subset) {
  BitMatrix stack(0, scheme.seed_dim);
  for (int p : subset_to_indices(subset)) {
    if (p < 0 || p >= scheme.participant_count())
      throw ValidationError("subset mentions unknown participant");
    stack.append_rows(scheme.share_maps[static_cast<std::size_t>(p)]);
  }
  if (scheme.public_rows.rows() > 0) stack.append_rows(scheme.public_rows);
  return stack;
}

}  // namespace

BitVec reconstruct(const LinearScheme& scheme, Subset subset, const std::vector<BitVec>& shares,
                   const BitVec& public_values) {
  auto members = subset_to_indices(subset);
  if (members.size() != shares.size())
    throw ValidationError("reconstruct: one share vector per subset member required");
  if (public_values.size() != scheme.public_rows.rows())
    throw ValidationError("reconstruct: public value count mismatch");

  BitMatrix stack = stack_for_subset(scheme, subset);
  BitVec values(stack.rows());
  int at = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const BitMatrix& m = scheme.share_maps[static_cast<std::size_t>(members[i])];
    if (shares[i].size() != m.rows())
      throw ValidationError("reconstruct: share size mismatch for participant " +
                            std::to_string(members[i]));
    for (int r = 0; r < m.rows(); ++r, ++at) values.set(at, shares[i].get(r));
  }
  for (int r = 0; r < public_values.size(); ++r, ++at) values.set(at, public_values.get(r));

  Echelon span(scheme.seed_dim);
  span.add_matrix(stack);
  for (int r = 0; r < scheme.secret_map.rows(); ++r)
    if (!span.contains(scheme.secret_map.row(r)))
      throw NotQualified("subset cannot determine the secret");

  auto seed = gf2_solve(stack, values);
  if (!seed) throw InconsistentShares("no seed is consistent with the given shares");
  return scheme.secret_map.multiply(*seed);
}

PerfectnessReport verify_perfect(const LinearScheme& scheme, const AccessStructure& structure) {
  scheme.validate();
  if (scheme.participant_count() != structure.participant_count())
    throw ValidationError("verify_perfect: participant count mismatch");

  PerfectnessReport report;
  report.method = VerifyMethod::kRankBased;
  report.correct = true;
  report.is_private = true;

  for (Subset a : structure.minimal_sets()) {
    BitMatrix stack = stack_for_subset(scheme, a);
    Echelon span(scheme.seed_dim);
    span.add_matrix(stack);
    bool ok = true;
    for (int r = 0; r < scheme.secret_map.rows() && ok; ++r)
      ok = span.contains(scheme.secret_map.row(r));
    if (!ok) {
      report.correct = false;
      report.failing_set = a;
      return report;
    }
  }

  for (Subset a : maximal_independent_sets(structure)) {
    BitMatrix stack = stack_for_subset(scheme, a);
    Echelon span(scheme.seed_dim);
    span.add_matrix(stack);
    bool ok = true;
    for (int r = 0; r < scheme.secret_map.rows() && ok; ++r)
      ok = span.add_row(scheme.secret_map.row(r));
    if (!ok) {
      report.is_private = false;
      report.failing_set = a;
      return report;
    }
  }
  return report;
}

namespace {

std::string view_key(const BitMatrix& stack, const BitVec& seed) {
  BitVec bits = stack.multiply(seed);
  std::string key(static_cast<std::size_t>((bits.size() + 7) / 8), '\0');
  for (int i = 0; i < bits.size(); ++i)
    if (bits.get(i)) key[static_cast<std::size_t>(i) >> 3] |= static_cast<char>(1 << (i & 7));
  return key;
}

}  // namespace

PerfectnessReport brute_force_verify(const LinearScheme& scheme, const AccessStructure& structure) {
  scheme.validate();
  if (scheme.participant_count() != structure.participant_count())
    throw ValidationError("brute_force_verify: participant count mismatch");
  if (scheme.seed_dim > kBruteForceSeedCap)
    throw CapError("brute_force_verify: seed dimension exceeds cap " +
                   std::to_string(kBruteForceSeedCap));

  PerfectnessReport report;
  report.method = VerifyMethod::kBruteForce;
  report.correct = true;
  report.is_private = true;

  const std::uint64_t seeds = std::uint64_t{1} << scheme.seed_dim;
  const std::uint32_t secrets = std::uint32_t{1} << scheme.secret_dim;

  std::vector<BitVec> seed_vecs;
  std::vector<std::uint32_t> secret_of_seed;
  seed_vecs.reserve(seeds);
  secret_of_seed.reserve(seeds);
  for (std::uint64_t w = 0; w < seeds; ++w) {
    BitVec seed(scheme.seed_dim);
    if (scheme.seed_dim > 0) seed.words()[0] = w;
    seed_vecs.push_back(seed);
    BitVec s = scheme.secret_map.multiply(seed);
    secret_of_seed.push_back(static_cast<std::uint32_t>(s.words().empty() ? 0 : s.words()[0]));
  }

  for (Subset a : structure.minimal_sets()) {
    BitMatrix stack = stack_for_subset(scheme, a);
    std::unordered_map<std::string, std::uint32_t> determined;
    for (std::uint64_t w = 0; w < seeds; ++w) {
      auto [it, inserted] = determined.emplace(view_key(stack, seed_vecs[w]), secret_of_seed[w]);
      if (!inserted && it->second != secret_of_seed[w]) {
        report.correct = false;
        report.failing_set = a;
        return report;
      }
    }
  }

  for (Subset a : maximal_independent_sets(structure)) {
    BitMatrix stack = stack_for_subset(scheme, a);
    std::unordered_map<std::string, std::unordered_map<std::uint32_t, std::uint64_t>> table;
    for (std::uint64_t w = 0; w < seeds; ++w)
      ++table[view_key(stack, seed_vecs[w])][secret_of_seed[w]];
    for (const auto& [view, counts] : table) {
      bool ok = counts.size() == secrets;
      if (ok) {
        std::uint64_t first = counts.begin()->second;
        for (const auto& [sigma, c] : counts)
          if (c != first) {
            ok = false;
            break;
          }
      }
      if (!ok) {
        report.is_private = false;
        report.failing_set = a;
        return report;
      }
    }
  }
  return report;
}

namespace {

// Image of one source seed coordinate inside a larger seed space:
// either a single target coordinate or a dense row.
struct CoordImage {
  int dst_dim = 0;
  std::vector<int> shift;    // >= 0: target coordinate; -1: dense row
  std::vector<BitVec> dense; // parallel to shift, used when shift[j] < 0

  BitVec map_row(std::span<const std::uint64_t> src_words, int src_dim) const {
    BitVec out(dst_dim);
    for (int wi = 0; wi < static_cast<int>(src_words.size()); ++wi) {
      std::uint64_t w = src_words[static_cast<std::size_t>(wi)];
      while (w != 0) {
        int j = (wi << 6) + __builtin_ctzll(w);
        w &= w - 1;
        if (j >= src_dim) break;
        if (shift[static_cast<std::size_t>(j)] >= 0)
          out.flip(shift[static_cast<std::size_t>(j)]);
        else
          out.xor_with(dense[static_cast<std::size_t>(j)]);
      }
    }
    return out;
  }

  BitMatrix map_matrix(const BitMatrix& m, int src_dim) const {
    BitMatrix out(m.rows(), dst_dim);
    for (int r = 0; r < m.rows(); ++r) {
      BitVec row = map_row(m.row(r), src_dim);
      out.set_row(r, row.words());
    }
    return out;
  }
};

BitMatrix identity_block(int rows, int dst_dim, int offset) {
  BitMatrix m(rows, dst_dim);
  for (int r = 0; r < rows; ++r) m.set(r, offset + r, true);
  return m;
}

}  // namespace

LinearScheme expand_to_cells(const LinearScheme& scheme, const std::vector<Pattern>& cells,
                             int n, const std::string& label_prefix) {
  scheme.validate();
  if (n < 2) throw ValidationError("expand_to_cells: n >= 2 required");
  const Pattern all_one = static_cast<Pattern>((1u << n) - 1);
  const std::uint64_t normalized_m = (std::uint64_t{1} << n) - 2;
  if (scheme.participant_count() != static_cast<int>(normalized_m))
    throw ValidationError("expand_to_cells: scheme is not for the normalized structure");

  std::vector<std::vector<int>> members(std::size_t{1} << n);
  for (std::size_t p = 0; p < cells.size(); ++p) {
    if (cells[p] > all_one) throw ValidationError("expand_to_cells: pattern out of range");
    members[cells[p]].push_back(static_cast<int>(p));
  }
  for (Pattern eps = 1; eps < all_one; ++eps)
    if (members[eps].empty())
      throw ValidationError("expand_to_cells: non-constant cell " + std::to_string(eps) +
                            " has no participant");

  const int u = scheme.secret_dim;
  const int d_in = scheme.seed_dim;
  const bool split = !members[all_one].empty();

  LinearScheme out;
  out.secret_dim = u;
  int at = 0;
  out.seed_blocks.push_back({label_prefix + "/secret", at, u});
  at += u;
  int off_r = -1;
  if (split) {
    off_r = at;
    out.seed_blocks.push_back({label_prefix + "/pad", at, u});
    at += u;
  }
  const int off_free = at;
  if (d_in > u) out.seed_blocks.push_back({label_prefix + "/sub-free", at, d_in - u});
  at += d_in - u;

  // Fresh one-time-pad blocks: one per extra member of each cell.
  const int all_one_fresh = split ? static_cast<int>(members[all_one].size()) - 1 : 0;
  const int off_all_one_fresh = at;
  for (int t = 0; t < all_one_fresh; ++t)
    out.seed_blocks.push_back(
        {label_prefix + "/cell" + std::to_string(all_one) + "/fresh" + std::to_string(t),
         at + t * u, u});
  at += all_one_fresh * u;

  std::vector<int> cell_fresh_offset(std::size_t{1} << n, -1);
  for (Pattern eps = 1; eps < all_one; ++eps) {
    int extra = static_cast<int>(members[eps].size()) - 1;
    if (extra <= 0) continue;
    int rows = scheme.share_size(static_cast<int>(eps) - 1);
    cell_fresh_offset[eps] = at;
    for (int t = 0; t < extra; ++t)
      out.seed_blocks.push_back(
          {label_prefix + "/cell" + std::to_string(eps) + "/fresh" + std::to_string(t),
           at + t * rows, rows});
    at += extra * rows;
  }
  out.seed_dim = at;

  // Source coordinate images: secret coordinates take the pad when the
  // all-ones cell is inhabited, the rest shift into the sub-free block.
  CoordImage img;
  img.dst_dim = out.seed_dim;
  img.shift.assign(static_cast<std::size_t>(d_in), -1);
  img.dense.resize(static_cast<std::size_t>(d_in));
  for (int j = 0; j < d_in; ++j) {
    if (j < u) {
      if (split) {
        BitVec row(out.seed_dim);
        row.set(j, true);
        row.set(off_r + j, true);
        img.dense[static_cast<std::size_t>(j)] = std::move(row);
      } else {
        img.shift[static_cast<std::size_t>(j)] = j;
      }
    } else {
      img.shift[static_cast<std::size_t>(j)] = off_free + (j - u);
    }
  }

  out.secret_map = identity_block(u, out.seed_dim, 0);

  out.share_maps.assign(cells.size(), BitMatrix(0, out.seed_dim));
  // All-ones cell: k-of-k sharing of the pad.
  if (split) {
    const auto& group = members[all_one];
    for (std::size_t t = 0; t < group.size(); ++t) {
      BitMatrix share(u, out.seed_dim);
      if (t + 1 < group.size()) {
        share = identity_block(u, out.seed_dim, off_all_one_fresh + static_cast<int>(t) * u);
      } else {
        for (int b = 0; b < u; ++b) {
          share.set(b, off_r + b, true);
          for (int q = 0; q + 1 < static_cast<int>(group.size()); ++q)
            share.set(b, off_all_one_fresh + q * u + b, true);
        }
      }
      out.share_maps[static_cast<std::size_t>(group[t])] = std::move(share);
    }
  }
  // Non-constant cells: the normalized share, re-dealt when shared.
  for (Pattern eps = 1; eps < all_one; ++eps) {
    const auto& group = members[eps];
    BitMatrix mapped = img.map_matrix(scheme.share_maps[static_cast<std::size_t>(eps) - 1], d_in);
    if (group.size() == 1) {
      out.share_maps[static_cast<std::size_t>(group[0])] = std::move(mapped);
      continue;
    }
    int rows = mapped.rows();
    for (std::size_t t = 0; t < group.size(); ++t) {
      if (t + 1 < group.size()) {
        out.share_maps[static_cast<std::size_t>(group[t])] =
            identity_block(rows, out.seed_dim, cell_fresh_offset[eps] + static_cast<int>(t) * rows);
      } else {
        BitMatrix share = mapped;
        for (int r = 0; r < rows; ++r)
          for (int q = 0; q + 1 < static_cast<int>(group.size()); ++q)
            share.set(r, cell_fresh_offset[eps] + q * rows + r, true);
        out.share_maps[static_cast<std::size_t>(group[t])] = std::move(share);
      }
    }
  }

  if (scheme.public_rows.rows() > 0)
    out.public_rows = img.map_matrix(scheme.public_rows, d_in);
  else
    out.public_rows = BitMatrix(0, out.seed_dim);
  return out;
}

LinearScheme expand_to_universal(const LinearScheme& scheme, const CellCensus& census) {
  return expand_to_cells(scheme, census_cells(census), census.n);
}

LinearScheme restrict_to_cells(const LinearScheme& scheme, const std::vector<Pattern>& cells,
                               int n) {
  scheme.validate();
  if (static_cast<int>(cells.size()) != scheme.participant_count())
    throw ValidationError("restrict_to_cells: cell list length mismatch");
  const Pattern all_one = static_cast<Pattern>((1u << n) - 1);
  std::vector<int> rep(std::size_t{1} << n, -1);
  for (std::size_t p = 0; p < cells.size(); ++p) {
    Pattern eps = cells[p];
    if (eps != 0 && eps != all_one && rep[eps] < 0) rep[eps] = static_cast<int>(p);
  }
  for (Pattern eps = 1; eps < all_one; ++eps)
    if (rep[eps] < 0)
      throw ValidationError("restrict_to_cells: non-constant cell " + std::to_string(eps) +
                            " has no participant");

  LinearScheme out;
  out.seed_dim = scheme.seed_dim;
  out.secret_dim = scheme.secret_dim;
  out.secret_map = scheme.secret_map;
  out.seed_blocks = scheme.seed_blocks;
  out.share_maps.reserve(all_one - 1);
  std::vector<bool> is_rep(cells.size(), false);
  for (Pattern eps = 1; eps < all_one; ++eps) {
    is_rep[static_cast<std::size_t>(rep[eps])] = true;
    out.share_maps.push_back(scheme.share_maps[static_cast<std::size_t>(rep[eps])]);
  }
  out.public_rows = scheme.public_rows.rows() > 0 ? scheme.public_rows
                                                  : BitMatrix(0, scheme.seed_dim);
  for (std::size_t p = 0; p < cells.size(); ++p)
    if (!is_rep[p]) out.public_rows.append_rows(scheme.share_maps[p]);
  return out;
}

LinearScheme restrict_to_normalized(const LinearScheme& scheme, const CellCensus& census) {
  return restrict_to_cells(scheme, census_cells(census), census.n);
}

}  // namespace uas
