#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uas/builder.hpp"
#include "uas/complexity.hpp"
#include "uas/errors.hpp"

using namespace uas;

TEST_CASE("base scheme for two minimal sets") {
  LinearScheme s = base_u2();
  PerfectnessReport rep = verify_perfect(s, universal_normalized(2));
  CHECK(rep.perfect());
  PerfectnessReport brute = brute_force_verify(s, universal_normalized(2));
  CHECK(brute.perfect());
  CHECK(s.share_size(0) == 1);
  CHECK(s.share_size(1) == 1);
  CHECK(s.complexity() == f_closed(2, 1));

  BitRng rng(3);
  auto shares = deal(s, BitVec::from_string("1"), rng);
  CHECK(reconstruct(s, subset_bit(0), {shares[0]}).to_string() == "1");
}

TEST_CASE("gamma census cell counts") {
  CellCensus c = gamma_census(3, 3);
  CHECK(c.n == 2);
  CHECK(c.counts == std::vector<std::uint64_t>{1, 2, 2, 1});
  CHECK(c.total() == 6);  // all of the level-3 participants

  for (int j = 1; j <= 4; ++j) {
    CellCensus c4 = gamma_census(4, j);
    CHECK(c4.counts[0] == 1);
    CHECK(c4.counts[7] == 1);
    for (Pattern eps = 1; eps < 7; ++eps) CHECK(c4.counts[eps] == 2);
    CHECK(c4.total() == 14);
  }

  CHECK_THROWS_AS(gamma_census(3, 0), ValidationError);
  CHECK_THROWS_AS(gamma_census(3, 4), ValidationError);
}

TEST_CASE("one lift: base scheme becomes a three-set scheme") {
  LinearScheme s3 = lift(base_u2(), 2);
  CHECK(s3.secret_dim == 2);
  CHECK(s3.participant_count() == 6);

  // class sizes: weight-1 participants hold 2 bits, weight-2 hold 3
  for (int p = 0; p < 6; ++p) {
    int weight = __builtin_popcount(static_cast<unsigned>(p + 1));
    CHECK(s3.share_size(p) == (weight == 1 ? 2 : 3));
  }

  PerfectnessReport rep = verify_perfect(s3, universal_normalized(3));
  CHECK(rep.perfect());
  REQUIRE(s3.seed_dim <= kBruteForceSeedCap);
  PerfectnessReport brute = brute_force_verify(s3, universal_normalized(3));
  CHECK(brute.perfect());
}

TEST_CASE("two lifts: the four-set scheme realizes (6,10,11)") {
  LinearScheme s4 = lift(lift(base_u2(), 2), 3);
  CHECK(s4.secret_dim == 6);
  for (int p = 0; p < 14; ++p) {
    int weight = __builtin_popcount(static_cast<unsigned>(p + 1));
    int expect = weight == 1 ? 6 : (weight == 2 ? 10 : 11);
    CHECK(s4.share_size(p) == expect);
  }
  PerfectnessReport rep = verify_perfect(s4, universal_normalized(4));
  CHECK(rep.perfect());
}

TEST_CASE("build results match the closed-form profile") {
  CHECK_THROWS_AS(build(1), ValidationError);
  CHECK_THROWS_AS(build(kBuildCap + 1), CapError);

  BuildResult r2 = build(2);
  CHECK(r2.scheme.complexity() == rat(1));
  CHECK(r2.trace.class_bits == std::vector<std::int64_t>{1});

  BuildResult r3 = build(3);
  CHECK(r3.scheme.complexity() == rat(3, 2));
  CHECK(r3.trace.class_bits == std::vector<std::int64_t>{2, 3});

  BuildResult r4 = build(4);
  CHECK(r4.scheme.complexity() == rat(11, 6));
  CHECK(r4.trace.class_bits == std::vector<std::int64_t>{6, 10, 11});
  CHECK(r4.trace.secret_dim == 6);

  BuildResult r5 = build(5);
  CHECK(r5.scheme.complexity() == rat(13, 6));
  CHECK(r5.trace.class_bits == std::vector<std::int64_t>{24, 42, 52, 50});
  CHECK(r5.trace.secret_dim == 24);
}

TEST_CASE("size profile equals the closed form") {
  HarmonicTable table(10);
  for (int n = 2; n <= 5; ++n) {
    BuildTrace trace = build(n).trace;
    std::vector<Rational> profile = size_profile(trace);
    REQUIRE(static_cast<int>(profile.size()) == n - 1);
    for (int i = 1; i < n; ++i) CHECK(profile[i - 1] == f_closed(n, i, table));
    CHECK(trace.class_bits[0] == trace.secret_dim);  // f_n(1) = 1
  }
  CHECK(size_profile(build(3).trace) == std::vector<Rational>{rat(1), rat(3, 2)});
  CHECK(size_profile(build(4).trace) ==
        std::vector<Rational>{rat(1), rat(5, 3), rat(11, 6)});
  CHECK(size_profile(build(5).trace) ==
        std::vector<Rational>{rat(1), rat(7, 4), rat(13, 6), rat(25, 12)});
}

TEST_CASE("realized sizes satisfy the recursion at each step") {
  // size_{n+1}(i) = i * size_n(i-1) + (n+1-i) * size_n(i)
  for (int n = 2; n <= 4; ++n) {
    BuildResult cur = build(n);
    BuildResult next = build(n + 1);
    auto prev_size = [&](int w) -> std::int64_t {
      if (w == 0) return 0;
      if (w == n) return cur.trace.secret_dim;
      return cur.trace.class_bits[static_cast<std::size_t>(w) - 1];
    };
    for (int i = 1; i <= n; ++i)
      CHECK(next.trace.class_bits[static_cast<std::size_t>(i) - 1] ==
            i * prev_size(i - 1) + (n + 1 - i) * prev_size(i));
  }
}

TEST_CASE("deal and reconstruct through a built scheme") {
  BuildResult r3 = build(3);
  BitRng rng(11);
  BitVec secret = BitVec::from_string("10");
  auto shares = deal(r3.scheme, secret, rng);
  // qualified set: the first minimal set of the normalized structure
  AccessStructure u3 = universal_normalized(3);
  Subset a1 = u3.minimal_sets()[0];
  std::vector<BitVec> subset_shares;
  for (int p : subset_to_indices(a1)) subset_shares.push_back(shares[p]);
  CHECK(reconstruct(r3.scheme, a1, subset_shares) == secret);
}

TEST_CASE("manifest names the sub-scheme blocks") {
  BuildTrace trace = build(3).trace;
  CHECK_FALSE(trace.manifest.empty());
  CHECK(trace.manifest.front().label == "secret");
  bool has_sub_block = false;
  int covered = 0;
  for (const SeedBlock& b : trace.manifest) {
    covered += b.length;
    if (b.label.find("u3/g") == 0) has_sub_block = true;
  }
  CHECK(has_sub_block);
  CHECK(covered == build(3).scheme.seed_dim);  // blocks tile the seed
}

TEST_CASE("lift rejects a non-perfect input scheme") {
  // break the base scheme: second share no longer carries the secret
  LinearScheme broken = base_u2();
  broken.seed_dim = 2;
  broken.secret_map = BitMatrix(1, 2);
  broken.secret_map.set(0, 0, true);
  BitMatrix s0(1, 2), s1(1, 2);
  s0.set(0, 0, true);
  s1.set(0, 1, true);
  broken.share_maps = {s0, s1};
  CHECK_THROWS_AS(lift(broken, 2), ValidationError);
}

TEST_CASE("six-set build stays within the cap and matches the profile") {
  BuildResult r6 = build(6);
  CHECK(r6.trace.secret_dim == 120);
  CHECK(r6.trace.class_bits == std::vector<std::int64_t>{120, 216, 282, 308, 274});
  CHECK(r6.scheme.complexity() == rat(77, 30));
  std::vector<Rational> profile = size_profile(r6.trace);
  CHECK(profile == std::vector<Rational>{rat(1), rat(9, 5), rat(47, 20), rat(77, 30),
                                         rat(137, 60)});
}
