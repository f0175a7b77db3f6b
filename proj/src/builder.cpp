#include "uas/builder.hpp"

#include <algorithm>

#include "uas/complexity.hpp"
#include "uas/errors.hpp"

namespace uas {

LinearScheme base_u2() {
  LinearScheme s;
  s.seed_dim = 1;
  s.secret_dim = 1;
  s.secret_map = BitMatrix::identity(1);
  s.share_maps = {BitMatrix::identity(1), BitMatrix::identity(1)};
  s.seed_blocks = {{"secret", 0, 1}};
  return s;
}

CellCensus gamma_census(int n_plus_1, int j) {
  if (n_plus_1 < 3) throw ValidationError("gamma_census: need at least three minimal sets");
  if (j < 1 || j > n_plus_1) throw ValidationError("gamma_census: set index out of range");
  int n = n_plus_1 - 1;
  CellCensus census;
  census.n = n;
  census.counts.assign(std::size_t{1} << n, 0);
  Pattern low_mask = static_cast<Pattern>((1u << (j - 1)) - 1);
  Pattern full = static_cast<Pattern>((1u << n_plus_1) - 1);
  for (Pattern pi = 1; pi < full; ++pi) {
    Pattern delta = (pi & low_mask) | ((pi >> 1) & ~low_mask);
    ++census.counts[delta];
  }
  return census;
}

namespace {

int normalized_level(const LinearScheme& scheme) {
  int m = scheme.participant_count();
  int n = 2;
  while (((1 << n) - 2) < m) ++n;
  if (((1 << n) - 2) != m)
    throw ValidationError("scheme participant count does not match a normalized structure");
  return n;
}

Pattern drop_bit(Pattern pi, int bit) {
  Pattern low = static_cast<Pattern>((1u << bit) - 1);
  return (pi & low) | ((pi >> 1) & ~low);
}

}  // namespace

LinearScheme lift(const LinearScheme& scheme_n, int n, bool verify_input) {
  scheme_n.validate();
  if (normalized_level(scheme_n) != n)
    throw ValidationError("lift: scheme does not match the stated level");
  if (verify_input) {
    if (n > kVerifyCap) throw CapError("lift: input verification beyond cap");
    PerfectnessReport report = verify_perfect(scheme_n, universal_normalized(n));
    if (!report.perfect()) throw ValidationError("lift: input scheme is not perfect");
  }

  const int u = scheme_n.secret_dim;
  const int m_out = (1 << (n + 1)) - 2;
  std::vector<BitMatrix> shadows = parity_shadows(n, u);

  // One expanded copy per dropped minimal set.
  std::vector<LinearScheme> subs;
  std::vector<std::vector<Pattern>> sub_cells;
  subs.reserve(n + 1);
  for (int j = 1; j <= n + 1; ++j) {
    std::vector<Pattern> cells(m_out);
    for (int p = 0; p < m_out; ++p)
      cells[static_cast<std::size_t>(p)] = drop_bit(static_cast<Pattern>(p + 1), j - 1);
    subs.push_back(expand_to_cells(scheme_n, cells, n,
                                   "u" + std::to_string(n + 1) + "/g" + std::to_string(j)));
    sub_cells.push_back(std::move(cells));
  }

  LinearScheme out;
  out.secret_dim = n * u;
  out.seed_blocks.push_back({"secret", 0, n * u});
  int at = n * u;
  std::vector<int> tail_offset(subs.size());
  for (std::size_t s = 0; s < subs.size(); ++s) {
    tail_offset[s] = at;
    for (const SeedBlock& b : subs[s].seed_blocks)
      if (b.offset >= u)
        out.seed_blocks.push_back({b.label, at + (b.offset - u), b.length});
    at += subs[s].seed_dim - u;
  }
  out.seed_dim = at;
  out.secret_map = BitMatrix(n * u, out.seed_dim);
  for (int b = 0; b < n * u; ++b) out.secret_map.set(b, b, true);

  // Sub-scheme seed coordinates: the secret of copy j is its shadow of
  // the combined secret, the tail is a dedicated fresh block.
  out.share_maps.assign(static_cast<std::size_t>(m_out), BitMatrix());
  out.public_rows = BitMatrix(0, out.seed_dim);
  for (std::size_t s = 0; s < subs.size(); ++s) {
    const LinearScheme& sub = subs[s];
    std::vector<BitVec> coord_rows(static_cast<std::size_t>(u));
    for (int b = 0; b < u; ++b) {
      BitVec row(out.seed_dim);
      for (int c = 0; c < n * u; ++c)
        if (shadows[s].get(b, c)) row.set(c, true);
      coord_rows[static_cast<std::size_t>(b)] = std::move(row);
    }
    auto map_rows = [&](const BitMatrix& m) {
      BitMatrix mapped(m.rows(), out.seed_dim);
      for (int r = 0; r < m.rows(); ++r) {
        BitVec row(out.seed_dim);
        auto words = m.row(r);
        for (int wi = 0; wi < static_cast<int>(words.size()); ++wi) {
          std::uint64_t w = words[static_cast<std::size_t>(wi)];
          while (w != 0) {
            int c = (wi << 6) + __builtin_ctzll(w);
            w &= w - 1;
            if (c < u)
              row.xor_with(coord_rows[static_cast<std::size_t>(c)]);
            else
              row.flip(tail_offset[s] + (c - u));
          }
        }
        mapped.set_row(r, row.words());
      }
      return mapped;
    };
    for (int p = 0; p < m_out; ++p) {
      BitMatrix mapped = map_rows(sub.share_maps[static_cast<std::size_t>(p)]);
      if (out.share_maps[static_cast<std::size_t>(p)].cols() == 0)
        out.share_maps[static_cast<std::size_t>(p)] = std::move(mapped);
      else
        out.share_maps[static_cast<std::size_t>(p)].append_rows(mapped);
    }
    if (sub.public_rows.rows() > 0) out.public_rows.append_rows(map_rows(sub.public_rows));
  }

  // Realized share sizes must satisfy the recursion exactly:
  // size_{n+1}(i) = i * size_n(i-1) + (n+1-i) * size_n(i).
  auto prev_size = [&](int w) -> std::int64_t {
    if (w == 0) return 0;
    if (w == n) return u;
    int pattern = (1 << w) - 1;  // first participant of weight w
    return scheme_n.share_size(pattern - 1);
  };
  for (int p = 0; p < m_out; ++p) {
    int i = __builtin_popcount(static_cast<unsigned>(p + 1));
    std::int64_t expect = static_cast<std::int64_t>(i) * prev_size(i - 1) +
                          static_cast<std::int64_t>(n + 1 - i) * prev_size(i);
    if (out.share_size(p) != expect)
      throw ValidationError("lift: realized share size violates the recursion");
  }
  return out;
}

BuildResult build(int n) {
  if (n < 2) throw ValidationError("build: n >= 2 required");
  if (n > kBuildCap) throw CapError("build: n exceeds cap " + std::to_string(kBuildCap));

  LinearScheme scheme = base_u2();
  for (int level = 2; level < n; ++level)
    scheme = lift(scheme, level, /*verify_input=*/level <= kVerifyCap);
  if (n <= kVerifyCap) {
    PerfectnessReport report = verify_perfect(scheme, universal_normalized(n));
    if (!report.perfect()) throw ValidationError("build: constructed scheme failed verification");
  }

  BuildTrace trace;
  trace.n = n;
  trace.secret_dim = scheme.secret_dim;
  int expected_secret = 1;
  for (int t = 2; t < n; ++t) expected_secret *= t;
  if (trace.secret_dim != expected_secret)
    throw ValidationError("build: secret size is not (n-1)!");

  trace.class_bits.assign(static_cast<std::size_t>(n) - 1, -1);
  HarmonicTable table(n);
  for (int p = 0; p < scheme.participant_count(); ++p) {
    int i = __builtin_popcount(static_cast<unsigned>(p + 1));
    auto& slot = trace.class_bits[static_cast<std::size_t>(i) - 1];
    if (slot < 0)
      slot = scheme.share_size(p);
    else if (slot != scheme.share_size(p))
      throw ValidationError("build: share sizes differ within one class");
  }
  for (int i = 1; i < n; ++i) {
    Rational expect = f_closed(n, i, table) * trace.secret_dim;
    if (expect.get_den() != 1 ||
        Rational(static_cast<long>(trace.class_bits[static_cast<std::size_t>(i) - 1])) != expect)
      throw ValidationError("build: class size does not equal secret_dim * f_n(i)");
  }
  trace.manifest = scheme.seed_blocks;
  return BuildResult{std::move(scheme), std::move(trace)};
}

std::vector<Rational> size_profile(const BuildTrace& trace) {
  std::vector<Rational> profile;
  profile.reserve(trace.class_bits.size());
  for (std::int64_t bits : trace.class_bits) {
    Rational q(static_cast<long>(bits), trace.secret_dim);
    q.canonicalize();
    profile.push_back(q);
  }
  return profile;
}

}  // namespace uas
