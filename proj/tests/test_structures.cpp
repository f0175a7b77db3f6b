#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "uas/access_structure.hpp"
#include "uas/errors.hpp"

using namespace uas;

namespace {

Subset mask(std::initializer_list<int> indices) {
  Subset s = 0;
  for (int i : indices) s |= subset_bit(i);
  return s;
}

// Oracle: maximal independent sets by scanning all 2^m subsets.
std::vector<Subset> brute_maximal_independent(const AccessStructure& st) {
  int m = st.participant_count();
  std::vector<Subset> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
    Subset s = a;
    if (st.is_qualified(s)) continue;
    bool maximal = true;
    for (int p = 0; p < m && maximal; ++p)
      if (!subset_test(s, p) && !st.is_qualified(s | subset_bit(p))) maximal = false;
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), subset_canonical_less);
  return out;
}

}  // namespace

TEST_CASE("minimal_antichain removes supersets and duplicates") {
  CHECK(minimal_antichain({mask({0}), mask({0, 1})}) == std::vector<Subset>{mask({0})});
  CHECK(minimal_antichain({mask({0}), mask({1})}) ==
        std::vector<Subset>{mask({0}), mask({1})});
  CHECK(minimal_antichain({mask({0, 1}), mask({1, 2}), mask({0, 1, 2})}) ==
        std::vector<Subset>{mask({0, 1}), mask({1, 2})});
  CHECK_THROWS_AS(minimal_antichain({}), ValidationError);
  CHECK_THROWS_AS(minimal_antichain({mask({0}), Subset{0}}), ValidationError);
}

TEST_CASE("strict construction rejects non-antichains") {
  CHECK_THROWS_AS(AccessStructure(2, {mask({0}), mask({0, 1})}, true), ValidationError);
  CHECK_NOTHROW(AccessStructure(2, {mask({0}), mask({0, 1})}, false));
  CHECK_NOTHROW(AccessStructure(2, {mask({0}), mask({1})}, true));
}

TEST_CASE("universal_normalized shapes") {
  CHECK_THROWS_AS(universal_normalized(1), ValidationError);

  AccessStructure u2 = universal_normalized(2);
  CHECK(u2.participant_count() == 2);
  CHECK(u2.minimal_sets() == std::vector<Subset>{mask({0}), mask({1})});

  AccessStructure u3 = universal_normalized(3);
  CHECK(u3.participant_count() == 6);
  for (Subset s : u3.minimal_sets()) CHECK(subset_size(s) == 3);

  AccessStructure u4 = universal_normalized(4);
  CHECK(u4.participant_count() == 14);
  for (Subset s : u4.minimal_sets()) CHECK(subset_size(s) == 7);
}

TEST_CASE("cell census of the normalized structures") {
  CellCensus c2 = cell_census(universal_normalized(2));
  CHECK(c2.counts == std::vector<std::uint64_t>{0, 1, 1, 0});
  CHECK(c2.is_normalized());
  CHECK_FALSE(c2.is_universal());  // constant cells are empty

  CellCensus c3 = cell_census(universal_normalized(3));
  CHECK(c3.counts[0] == 0);
  CHECK(c3.counts[7] == 0);
  for (Pattern eps = 1; eps < 7; ++eps) CHECK(c3.counts[eps] == 1);

  for (int n = 2; n <= 7; ++n) CHECK(cell_census(universal_normalized(n)).is_normalized());
}

TEST_CASE("census with a participant in every minimal set") {
  // normalized two-set structure plus one participant in both sets
  AccessStructure st(3, {mask({0, 2}), mask({1, 2})});
  CellCensus c = cell_census(st);
  CHECK(c.counts == std::vector<std::uint64_t>{0, 1, 1, 1});
  CHECK_FALSE(c.is_universal());  // the all-out cell is empty
  CHECK_FALSE(c.is_normalized());
  CHECK(c.total() == 3);

  // one more participant outside every set makes it universal
  AccessStructure st4(4, {mask({0, 2}), mask({1, 2})});
  CHECK(cell_census(st4).is_universal());
}

TEST_CASE("structure_from_census round trips the census") {
  CellCensus c;
  c.n = 2;
  c.counts = {2, 1, 3, 1};
  AccessStructure st = structure_from_census(c);
  CHECK(st.participant_count() == 7);
  CellCensus back = cell_census(st);
  CHECK(back.counts == c.counts);
}

TEST_CASE("qualification queries") {
  AccessStructure u2 = universal_normalized(2);
  CHECK(u2.is_qualified(mask({0})));
  CHECK_FALSE(u2.is_qualified(0));

  AccessStructure u3 = universal_normalized(3);
  for (Subset a : u3.minimal_sets()) {
    CHECK(u3.is_qualified(a));
    Subset smaller = a & (a - 1);  // drop lowest element
    CHECK_FALSE(u3.is_qualified(smaller));
  }
}

TEST_CASE("is_qualified is monotone (random structures)") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    int m = 1 + static_cast<int>(rng() % 10);
    int k = 1 + static_cast<int>(rng() % 5);
    std::vector<Subset> sets;
    for (int i = 0; i < k; ++i) {
      Subset s = rng() & static_cast<std::uint64_t>(subset_universe(m));
      if (s == 0) s = subset_bit(static_cast<int>(rng() % m));
      sets.push_back(s);
    }
    AccessStructure st(m, sets);
    Subset a = rng() & static_cast<std::uint64_t>(subset_universe(m));
    int extra = static_cast<int>(rng() % m);
    if (st.is_qualified(a)) CHECK(st.is_qualified(a | subset_bit(extra)));
  }
}

TEST_CASE("maximal independent sets: small known cases") {
  CHECK(maximal_independent_sets(universal_normalized(2)) == std::vector<Subset>{Subset{0}});

  // single minimal set covering everyone: drop any one participant
  AccessStructure all4(4, {mask({0, 1, 2, 3})});
  auto got = maximal_independent_sets(all4);
  CHECK(got.size() == 4);
  for (Subset s : got) CHECK(subset_size(s) == 3);
}

TEST_CASE("maximal independent sets match the exhaustive oracle") {
  CHECK(maximal_independent_sets(universal_normalized(3)) ==
        brute_maximal_independent(universal_normalized(3)));
  CHECK(maximal_independent_sets(universal_normalized(4)) ==
        brute_maximal_independent(universal_normalized(4)));

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 250; ++trial) {
    int m = 1 + static_cast<int>(rng() % 12);
    int k = 1 + static_cast<int>(rng() % 6);
    std::vector<Subset> sets;
    for (int i = 0; i < k; ++i) {
      Subset s = rng() & static_cast<std::uint64_t>(subset_universe(m));
      if (s == 0) s = subset_bit(static_cast<int>(rng() % m));
      sets.push_back(s);
    }
    AccessStructure st(m, sets);
    CHECK(maximal_independent_sets(st) == brute_maximal_independent(st));
  }
}

TEST_CASE("every independent set lies inside a maximal one") {
  AccessStructure u3 = universal_normalized(3);
  auto maxsets = maximal_independent_sets(u3);
  for (std::uint64_t a = 0; a < 64; ++a) {
    if (u3.is_qualified(a)) continue;
    bool covered = false;
    for (Subset s : maxsets)
      if (subset_contains(s, a)) covered = true;
    CHECK(covered);
  }
}

TEST_CASE("theorem7 structures for small n") {
  Theorem7Result t2 = theorem7_structure(2);
  CHECK(t2.k == 2);
  // participants: a1 a2 = 0,1; b1 b2 = 2,3
  CHECK(t2.structure.participant_count() == 4);
  std::vector<Subset> expect2 = minimal_antichain({mask({2, 0}), mask({2, 3, 1})});
  CHECK(t2.structure.minimal_sets() == expect2);
  CHECK(t2.certificate.a0 == mask({0, 1}));

  Theorem7Result t3 = theorem7_structure(3);
  CHECK(t3.k == 2);
  CHECK(t3.structure.participant_count() == 5);
  std::vector<Subset> expect3 =
      minimal_antichain({mask({2, 0}), mask({2, 3, 1}), mask({2, 3, 4})});
  CHECK(t3.structure.minimal_sets() == expect3);

  CHECK(theorem7_structure(4).k == 3);
  CHECK(theorem7_structure(8).k == 4);
  CHECK(theorem7_structure(64).k == 7);
  CHECK_THROWS_AS(theorem7_structure(1), ValidationError);
}

TEST_CASE("theorem7 invariants: qualification pattern and C-sequence") {
  for (int n : {2, 3, 4, 5, 7, 8, 15, 16, 31, 40, 64}) {
    Theorem7Result t = theorem7_structure(n);
    CHECK(t.structure.minimal_set_count() == n);
    Subset b_prefix = 0;
    for (int i = 0; i < n; ++i) {
      Subset c_i = t.certificate.c_sequence[static_cast<std::size_t>(i)];
      CHECK_FALSE(t.structure.is_qualified(b_prefix | c_i));
      b_prefix |= subset_bit(t.certificate.b_sequence[static_cast<std::size_t>(i)]);
      CHECK(t.structure.is_qualified(b_prefix | c_i));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        CHECK_FALSE(subset_proper(t.certificate.c_sequence[static_cast<std::size_t>(i)],
                                  t.certificate.c_sequence[static_cast<std::size_t>(j)]));
  }
}
