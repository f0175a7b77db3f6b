#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "uas/bit_matrix.hpp"

using namespace uas;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  BitMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (rng() & 1) m.set(r, c, true);
  return m;
}

BitVec random_vec(std::mt19937_64& rng, int size) {
  BitVec v(size);
  for (int i = 0; i < size; ++i)
    if (rng() & 1) v.set(i, true);
  return v;
}

}  // namespace

TEST_CASE("rank of simple matrices") {
  CHECK(gf2_rank(BitMatrix::identity(5)) == 5);
  BitMatrix m(3, 4);
  m.set(0, 0, true);
  m.set(1, 0, true);  // duplicate row
  m.set(2, 1, true);
  CHECK(gf2_rank(m) == 2);
  CHECK(gf2_rank(BitMatrix(4, 4)) == 0);
}

TEST_CASE("solve finds consistent solutions and rejects inconsistent ones") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 10);
    int cols = 1 + static_cast<int>(rng() % 10);
    BitMatrix a = random_matrix(rng, rows, cols);
    BitVec x = random_vec(rng, cols);
    BitVec b = a.multiply(x);
    auto sol = gf2_solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(a.multiply(*sol) == b);
  }
  // x + y = 1 and x + y = 0 cannot both hold
  BitMatrix a(2, 2);
  a.set(0, 0, true);
  a.set(0, 1, true);
  a.set(1, 0, true);
  a.set(1, 1, true);
  BitVec b(2);
  b.set(0, true);
  CHECK_FALSE(gf2_solve(a, b).has_value());
}

TEST_CASE("null basis spans exactly the kernel") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 8);
    int cols = 1 + static_cast<int>(rng() % 12);
    BitMatrix a = random_matrix(rng, rows, cols);
    BitMatrix basis = gf2_null_basis(a);
    CHECK(basis.rows() == cols - gf2_rank(a));
    for (int r = 0; r < basis.rows(); ++r) {
      BitVec v(cols);
      for (int c = 0; c < cols; ++c) v.set(c, basis.get(r, c));
      CHECK(a.multiply(v).is_zero());
    }
    if (basis.rows() > 0) CHECK(gf2_rank(basis) == basis.rows());
  }
}

TEST_CASE("right inverse exists exactly for full row rank") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = rows + static_cast<int>(rng() % 6);
    BitMatrix a = random_matrix(rng, rows, cols);
    auto rinv = gf2_right_inverse(a);
    if (gf2_rank(a) < rows) {
      CHECK_FALSE(rinv.has_value());
      continue;
    }
    REQUIRE(rinv.has_value());
    // A * R = I, column by column
    for (int j = 0; j < rows; ++j) {
      BitVec col(cols);
      for (int c = 0; c < cols; ++c) col.set(c, rinv->get(c, j));
      BitVec image = a.multiply(col);
      for (int r = 0; r < rows; ++r) CHECK(image.get(r) == (r == j));
    }
  }
}

TEST_CASE("echelon membership matches rank arithmetic") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 8);
    int cols = 1 + static_cast<int>(rng() % 10);
    BitMatrix a = random_matrix(rng, rows, cols);
    Echelon e(cols);
    e.add_matrix(a);
    CHECK(e.rank() == gf2_rank(a));
    // any xor-combination of rows is contained
    BitVec combo(cols);
    for (int r = 0; r < rows; ++r)
      if (rng() & 1)
        for (int c = 0; c < cols; ++c)
          if (a.get(r, c)) combo.flip(c);
    CHECK(e.contains(combo.words()));
  }
}

TEST_CASE("vstack stacks rows in order") {
  BitMatrix a(1, 3), b(2, 3);
  a.set(0, 0, true);
  b.set(0, 1, true);
  b.set(1, 2, true);
  BitMatrix s = a.vstack(b);
  CHECK(s.rows() == 3);
  CHECK(s.get(0, 0));
  CHECK(s.get(1, 1));
  CHECK(s.get(2, 2));
}

TEST_CASE("bit vec string round trip") {
  BitVec v = BitVec::from_string("10110");
  CHECK(v.size() == 5);
  CHECK(v.to_string() == "10110");
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));
}
