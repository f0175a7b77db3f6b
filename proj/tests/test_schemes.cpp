#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "uas/builder.hpp"
#include "uas/errors.hpp"
#include "uas/scheme.hpp"

using namespace uas;

namespace {

Subset mask(std::initializer_list<int> indices) {
  Subset s = 0;
  for (int i : indices) s |= subset_bit(i);
  return s;
}

// Schemes produced across this file, re-checked against the
// exhaustive oracle at the end.
std::vector<std::pair<LinearScheme, AccessStructure>>& oracle_queue() {
  static std::vector<std::pair<LinearScheme, AccessStructure>> q;
  return q;
}

void queue_for_oracle(const LinearScheme& s, const AccessStructure& st) {
  if (s.seed_dim <= kBruteForceSeedCap) oracle_queue().emplace_back(s, st);
}

}  // namespace

TEST_CASE("kofk additive shapes and degenerate case") {
  CHECK_THROWS_AS(kofk_additive(0, 1), ValidationError);

  LinearScheme one = kofk_additive(1, 1);
  CHECK(one.seed_dim == 1);
  CHECK(one.share_maps.size() == 1);
  BitVec secret = BitVec::from_string("1");
  BitRng rng(1);
  auto shares = deal(one, secret, rng);
  CHECK(shares[0] == secret);  // the single share is the secret

  LinearScheme two = kofk_additive(2, 1);
  PerfectnessReport rep = verify_perfect(two, kofk_structure(2));
  CHECK(rep.correct);
  CHECK(rep.is_private);
  queue_for_oracle(two, kofk_structure(2));
}

TEST_CASE("kofk 3-of-3 with two-bit secret: rank report equals brute force") {
  LinearScheme s = kofk_additive(3, 2);
  CHECK(s.seed_dim == 6);
  AccessStructure st = kofk_structure(3);
  PerfectnessReport rank_rep = verify_perfect(s, st);
  PerfectnessReport brute_rep = brute_force_verify(s, st);
  CHECK(rank_rep.correct == brute_rep.correct);
  CHECK(rank_rep.is_private == brute_rep.is_private);
  CHECK(rank_rep.perfect());
  queue_for_oracle(s, st);
}

TEST_CASE("deal with forced-zero randomness is the one-time pad") {
  LinearScheme s = kofk_additive(2, 1);
  BitVec secret = BitVec::from_string("1");
  BitVec free_bits(s.seed_dim - s.secret_dim);  // all zero
  BitVec seed = seed_from_parts(s, secret, free_bits);
  auto shares = shares_from_seed(s, seed);
  CHECK(shares[0].to_string() == "0");
  CHECK(shares[1].to_string() == "1");
}

TEST_CASE("deal then reconstruct is the identity") {
  BitRng rng(42);
  for (const LinearScheme& s : {kofk_additive(2, 1), kofk_additive(3, 2), kofk_additive(1, 3)}) {
    Subset everyone = subset_universe(s.participant_count());
    for (int trial = 0; trial < 50; ++trial) {
      BitVec secret(s.secret_dim);
      for (int i = 0; i < s.secret_dim; ++i) secret.set(i, rng.next());
      auto shares = deal(s, secret, rng);
      CHECK(reconstruct(s, everyone, shares) == secret);
    }
  }
}

TEST_CASE("reconstruct: XOR of all shares, refusal cases") {
  LinearScheme s = kofk_additive(3, 1);
  BitVec one = BitVec::from_string("1");
  std::vector<BitVec> shares = {one, one, one};
  CHECK(reconstruct(s, mask({0, 1, 2}), shares).to_string() == "1");

  std::vector<BitVec> two = {one, one};
  CHECK_THROWS_AS(reconstruct(s, mask({0, 1}), two), NotQualified);

  // share vector count must match the subset
  CHECK_THROWS_AS(reconstruct(s, mask({0, 1, 2}), two), ValidationError);
}

TEST_CASE("reconstruct flags inconsistent shares") {
  // both participants hold the secret itself, so differing shares
  // cannot come from any seed
  LinearScheme s = base_u2();
  std::vector<BitVec> bad = {BitVec::from_string("0"), BitVec::from_string("1")};
  CHECK_THROWS_AS(reconstruct(s, mask({0, 1}), bad), InconsistentShares);
}

TEST_CASE("verify_perfect catches a threshold mismatch") {
  LinearScheme s = kofk_additive(3, 1);
  // 2-of-3 structure: every pair is qualified
  AccessStructure two_of_three(3, {mask({0, 1}), mask({0, 2}), mask({1, 2})});
  PerfectnessReport rep = verify_perfect(s, two_of_three);
  CHECK_FALSE(rep.correct);
  REQUIRE(rep.failing_set.has_value());
  CHECK(subset_size(*rep.failing_set) == 2);
}

TEST_CASE("verify_perfect and brute force catch a constructed leak") {
  // participant 0's share is the secret itself
  LinearScheme s;
  s.seed_dim = 2;
  s.secret_dim = 1;
  s.secret_map = BitMatrix(1, 2);
  s.secret_map.set(0, 0, true);
  BitMatrix leak(1, 2), pad(1, 2);
  leak.set(0, 0, true);
  pad.set(0, 1, true);
  s.share_maps = {leak, pad};
  AccessStructure st(2, {mask({0, 1})});

  for (PerfectnessReport rep : {verify_perfect(s, st), brute_force_verify(s, st)}) {
    CHECK(rep.correct);
    CHECK_FALSE(rep.is_private);
    REQUIRE(rep.failing_set.has_value());
    CHECK(subset_test(*rep.failing_set, 0));
  }
}

TEST_CASE("brute force cap") {
  LinearScheme s = kofk_additive(13, 2);  // seed 26 bits
  CHECK_THROWS_AS(brute_force_verify(s, kofk_structure(13)), CapError);
}

TEST_CASE("parity shadows recover from any n of n+1 pieces") {
  CHECK_THROWS_AS(parity_shadows(0, 1), ValidationError);

  auto one = parity_shadows(1, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == one[1]);  // both shadows equal the secret

  // n=2, unit=1, secret (1,0): shadows 1, 0, 1^0
  auto two = parity_shadows(2, 1);
  BitVec secret2 = BitVec::from_string("10");
  CHECK(two[0].multiply(secret2).to_string() == "1");
  CHECK(two[1].multiply(secret2).to_string() == "0");
  CHECK(two[2].multiply(secret2).to_string() == "1");

  // any n shadows determine the secret; any n-1 leave a block open
  for (auto [n, unit] : std::vector<std::pair<int, int>>{{2, 1}, {4, 6}, {3, 2}}) {
    auto shadows = parity_shadows(n, unit);
    REQUIRE(static_cast<int>(shadows.size()) == n + 1);
    for (std::size_t drop = 0; drop < shadows.size(); ++drop) {
      Echelon span(n * unit);
      for (std::size_t j = 0; j < shadows.size(); ++j)
        if (j != drop) span.add_matrix(shadows[j]);
      CHECK(span.rank() == n * unit);
    }
    for (std::size_t away1 = 0; away1 < shadows.size(); ++away1)
      for (std::size_t away2 = away1 + 1; away2 < shadows.size(); ++away2) {
        Echelon span(n * unit);
        for (std::size_t j = 0; j < shadows.size(); ++j)
          if (j != away1 && j != away2) span.add_matrix(shadows[j]);
        CHECK(span.rank() < n * unit);
      }
  }
}

TEST_CASE("expansion with a normalized census is the identity") {
  LinearScheme s3 = build(3).scheme;
  CellCensus normalized = cell_census(universal_normalized(3));
  LinearScheme expanded = expand_to_universal(s3, normalized);
  CHECK(expanded.seed_dim == s3.seed_dim);
  for (int p = 0; p < s3.participant_count(); ++p)
    CHECK(expanded.share_maps[p] == s3.share_maps[p]);
}

TEST_CASE("expansion onto an inhabited all-ones cell keeps complexity one for n=2") {
  CellCensus census;
  census.n = 2;
  census.counts = {0, 1, 1, 1};
  LinearScheme base = base_u2();
  LinearScheme expanded = expand_to_universal(base, census);
  AccessStructure st = structure_from_census(census);
  CHECK(expanded.complexity() == rat(1));
  PerfectnessReport rep = verify_perfect(expanded, st);
  CHECK(rep.perfect());
  queue_for_oracle(expanded, st);
}

TEST_CASE("expansion with every cell doubled keeps cell-wise share sizes") {
  LinearScheme s3 = build(3).scheme;
  CellCensus census;
  census.n = 3;
  census.counts.assign(8, 2);
  LinearScheme expanded = expand_to_universal(s3, census);
  AccessStructure st = structure_from_census(census);
  CHECK(st.participant_count() == 16);
  PerfectnessReport rep = verify_perfect(expanded, st);
  CHECK(rep.perfect());

  std::vector<Pattern> cells = census_cells(census);
  for (std::size_t p = 0; p < cells.size(); ++p) {
    Pattern eps = cells[p];
    int expect = (eps == 0) ? 0 : (eps == 7 ? s3.secret_dim : s3.share_size(eps - 1));
    CHECK(expanded.share_size(static_cast<int>(p)) == expect);
  }
}

TEST_CASE("expansion rejects an empty non-constant cell") {
  CellCensus census;
  census.n = 2;
  census.counts = {0, 0, 1, 0};
  CHECK_THROWS_AS(expand_to_universal(base_u2(), census), ValidationError);
}

TEST_CASE("restriction of an already normalized scheme changes nothing") {
  LinearScheme s3 = build(3).scheme;
  CellCensus normalized = cell_census(universal_normalized(3));
  LinearScheme restricted = restrict_to_normalized(s3, normalized);
  CHECK(restricted.public_rows.rows() == 0);
  for (int p = 0; p < s3.participant_count(); ++p)
    CHECK(restricted.share_maps[p] == s3.share_maps[p]);
}

TEST_CASE("expand then restrict round trips to a perfect normalized scheme") {
  // n=2 with an inhabited all-ones cell
  CellCensus census2;
  census2.n = 2;
  census2.counts = {0, 1, 1, 1};
  LinearScheme expanded2 = expand_to_universal(base_u2(), census2);
  LinearScheme back2 = restrict_to_normalized(expanded2, census2);
  PerfectnessReport rep2 = verify_perfect(back2, universal_normalized(2));
  CHECK(rep2.perfect());
  queue_for_oracle(back2, universal_normalized(2));

  // n=3 with duplicated cells
  CellCensus census3;
  census3.n = 3;
  census3.counts = {0, 2, 1, 2, 1, 2, 1, 0};
  LinearScheme expanded3 = expand_to_universal(build(3).scheme, census3);
  PerfectnessReport repx = verify_perfect(expanded3, structure_from_census(census3));
  CHECK(repx.perfect());
  LinearScheme back3 = restrict_to_normalized(expanded3, census3);
  PerfectnessReport rep3 = verify_perfect(back3, universal_normalized(3));
  CHECK(rep3.perfect());
}

TEST_CASE("linearity: share vectors add like their secrets") {
  BitRng rng(7);
  LinearScheme s = build(3).scheme;
  Subset everyone = subset_universe(s.participant_count());
  for (int trial = 0; trial < 25; ++trial) {
    BitVec s1(s.secret_dim), s2(s.secret_dim);
    BitVec r1(s.seed_dim - s.secret_dim), r2(s.seed_dim - s.secret_dim);
    for (int i = 0; i < s.secret_dim; ++i) {
      s1.set(i, rng.next());
      s2.set(i, rng.next());
    }
    for (int i = 0; i < r1.size(); ++i) {
      r1.set(i, rng.next());
      r2.set(i, rng.next());
    }
    auto sh1 = shares_from_seed(s, seed_from_parts(s, s1, r1));
    auto sh2 = shares_from_seed(s, seed_from_parts(s, s2, r2));
    std::vector<BitVec> sum;
    for (std::size_t p = 0; p < sh1.size(); ++p) {
      BitVec v = sh1[p];
      v.xor_with(sh2[p]);
      sum.push_back(v);
    }
    BitVec expect = s1;
    expect.xor_with(s2);
    CHECK(reconstruct(s, everyone, sum) == expect);
  }
}

TEST_CASE("oracle equivalence for every queued scheme") {
  CHECK_FALSE(oracle_queue().empty());
  for (const auto& [scheme, structure] : oracle_queue()) {
    PerfectnessReport rank_rep = verify_perfect(scheme, structure);
    PerfectnessReport brute_rep = brute_force_verify(scheme, structure);
    CHECK(rank_rep.correct == brute_rep.correct);
    CHECK(rank_rep.is_private == brute_rep.is_private);
  }
}
