#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace uas {

// Dense bit vector over the two-element field.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int size) : size_(size), words_((size + 63) / 64, 0) {}

  int size() const { return size_; }
  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void xor_with(const BitVec& other);
  bool is_zero() const;

  bool operator==(const BitVec& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  // "0101..." with index 0 first.
  std::string to_string() const;
  static BitVec from_string(const std::string& bits);

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row-major dense matrix over the two-element field.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(static_cast<std::size_t>(rows) * wpr_, 0) {}

  static BitMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const {
    return (words_[static_cast<std::size_t>(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1;
  }
  void set(int r, int c, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (c & 63);
    auto& w = words_[static_cast<std::size_t>(r) * wpr_ + (c >> 6)];
    if (v)
      w |= mask;
    else
      w &= ~mask;
  }

  std::span<const std::uint64_t> row(int r) const {
    return {words_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)};
  }
  std::span<std::uint64_t> row(int r) {
    return {words_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)};
  }

  void xor_row(int dst, int src);                       // row dst ^= row src
  void xor_row_from(int dst, std::span<const std::uint64_t> src);
  void swap_rows(int a, int b);
  void set_row(int dst, std::span<const std::uint64_t> src);

  // Rows of `other` appended below (column counts must match).
  BitMatrix vstack(const BitMatrix& other) const;
  void append_rows(const BitMatrix& other);

  BitVec multiply(const BitVec& x) const;  // cols == x.size()

  bool operator==(const BitMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
  }

 private:
  int rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row echelon form kept for repeated membership queries.
class Echelon {
 public:
  explicit Echelon(int cols);

  // Reduces `row` against the current basis; if a remainder is left it
  // joins the basis. Returns true when the row was independent.
  bool add_row(std::span<const std::uint64_t> row);
  void add_matrix(const BitMatrix& m);

  // True iff `row` lies in the span of the added rows.
  bool contains(std::span<const std::uint64_t> row) const;

  int rank() const { return static_cast<int>(pivots_.size()); }
  int cols() const { return cols_; }

 private:
  int cols_ = 0, wpr_ = 0;
  std::vector<std::vector<std::uint64_t>> basis_;  // one row per pivot
  std::vector<int> pivots_;                        // pivot column of each row
};

int gf2_rank(const BitMatrix& m);

// Solves A x = b. Returns a particular solution or nullopt when
// inconsistent.
std::optional<BitVec> gf2_solve(const BitMatrix& a, const BitVec& b);

// Basis of the null space of A, one row per basis vector (d columns).
BitMatrix gf2_null_basis(const BitMatrix& a);

// Right inverse R with A R = I for a full-row-rank A (rows x cols,
// rows <= cols). Returns cols x rows matrix.
std::optional<BitMatrix> gf2_right_inverse(const BitMatrix& a);

}  // namespace uas
