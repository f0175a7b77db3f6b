#include "uas/bit_matrix.hpp"

#include <algorithm>
#include <cassert>

#include "uas/errors.hpp"

namespace uas {

void BitVec::xor_with(const BitVec& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
}

bool BitVec::is_zero() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::string BitVec::to_string() const {
  std::string out(size_, '0');
  for (int i = 0; i < size_; ++i)
    if (get(i)) out[i] = '1';
  return out;
}

BitVec BitVec::from_string(const std::string& bits) {
  BitVec v(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(static_cast<int>(i), true);
    else if (bits[i] != '0')
      throw ValidationError("bit string must contain only 0/1");
  }
  return v;
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void BitMatrix::xor_row(int dst, int src) {
  auto* d = words_.data() + static_cast<std::size_t>(dst) * wpr_;
  const auto* s = words_.data() + static_cast<std::size_t>(src) * wpr_;
  for (int i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BitMatrix::xor_row_from(int dst, std::span<const std::uint64_t> src) {
  assert(static_cast<int>(src.size()) == wpr_);
  auto* d = words_.data() + static_cast<std::size_t>(dst) * wpr_;
  for (int i = 0; i < wpr_; ++i) d[i] ^= src[i];
}

void BitMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  auto* pa = words_.data() + static_cast<std::size_t>(a) * wpr_;
  auto* pb = words_.data() + static_cast<std::size_t>(b) * wpr_;
  for (int i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
}

void BitMatrix::set_row(int dst, std::span<const std::uint64_t> src) {
  assert(static_cast<int>(src.size()) == wpr_);
  auto* d = words_.data() + static_cast<std::size_t>(dst) * wpr_;
  std::copy(src.begin(), src.end(), d);
}

BitMatrix BitMatrix::vstack(const BitMatrix& other) const {
  BitMatrix out = *this;
  out.append_rows(other);
  return out;
}

void BitMatrix::append_rows(const BitMatrix& other) {
  if (rows_ == 0 && cols_ == 0) {
    *this = other;
    return;
  }
  if (other.rows_ == 0) return;
  if (other.cols_ != cols_) throw ValidationError("vstack: column count mismatch");
  words_.insert(words_.end(), other.words_.begin(), other.words_.end());
  rows_ += other.rows_;
}

BitVec BitMatrix::multiply(const BitVec& x) const {
  assert(x.size() == cols_);
  BitVec out(rows_);
  auto xw = x.words();
  for (int r = 0; r < rows_; ++r) {
    auto rw = row(r);
    std::uint64_t acc = 0;
    for (int i = 0; i < wpr_; ++i) acc ^= rw[i] & xw[i];
    int parity = __builtin_popcountll(acc) & 1;
    if (parity) out.set(r, true);
  }
  return out;
}

Echelon::Echelon(int cols) : cols_(cols), wpr_((cols + 63) / 64) {}

bool Echelon::add_row(std::span<const std::uint64_t> row) {
  std::vector<std::uint64_t> work(row.begin(), row.end());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    int p = pivots_[k];
    if ((work[p >> 6] >> (p & 63)) & 1)
      for (int i = 0; i < wpr_; ++i) work[i] ^= basis_[k][i];
  }
  int pivot = -1;
  for (int i = 0; i < wpr_ && pivot < 0; ++i)
    if (work[i] != 0) pivot = (i << 6) + __builtin_ctzll(work[i]);
  if (pivot < 0) return false;
  basis_.push_back(std::move(work));
  pivots_.push_back(pivot);
  return true;
}

void Echelon::add_matrix(const BitMatrix& m) {
  assert(m.cols() == cols_);
  for (int r = 0; r < m.rows(); ++r) add_row(m.row(r));
}

bool Echelon::contains(std::span<const std::uint64_t> row) const {
  std::vector<std::uint64_t> work(row.begin(), row.end());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    int p = pivots_[k];
    if ((work[p >> 6] >> (p & 63)) & 1)
      for (int i = 0; i < wpr_; ++i) work[i] ^= basis_[k][i];
  }
  for (int i = 0; i < wpr_; ++i)
    if (work[i] != 0) return false;
  return true;
}

int gf2_rank(const BitMatrix& m) {
  Echelon e(m.cols());
  e.add_matrix(m);
  return e.rank();
}

namespace {

// Gauss-Jordan on [A | b-ish extras packed by caller]; returns pivot
// column per eliminated row.
struct Reduced {
  BitMatrix mat;        // reduced rows (possibly fewer than input)
  std::vector<int> pivot_cols;
};

Reduced row_reduce(const BitMatrix& a) {
  BitMatrix m = a;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.get(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    m.swap_rows(r, sel);
    for (int i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.xor_row(i, r);
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace

std::optional<BitVec> gf2_solve(const BitMatrix& a, const BitVec& b) {
  assert(b.size() == a.rows());
  // Augment with b as an extra column. Padding bits past cols are
  // always zero, so a word copy is safe.
  BitMatrix aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    auto src = a.row(r);
    auto dst = aug.row(r);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
    aug.set(r, a.cols(), b.get(r));
  }
  Reduced red = row_reduce(aug);
  BitVec x(a.cols());
  for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) {
    int c = red.pivot_cols[k];
    if (c == a.cols()) return std::nullopt;  // 0 = 1 row
    x.set(c, red.mat.get(static_cast<int>(k), a.cols()));
  }
  return x;
}

BitMatrix gf2_null_basis(const BitMatrix& a) {
  Reduced red = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : red.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  BitMatrix basis(static_cast<int>(free_cols.size()), a.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.set(static_cast<int>(k), fc, true);
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r)
      if (red.mat.get(static_cast<int>(r), fc))
        basis.set(static_cast<int>(k), red.pivot_cols[r], true);
  }
  return basis;
}

std::optional<BitMatrix> gf2_right_inverse(const BitMatrix& a) {
  // Solve A r_i = e_i column by column on a shared reduction.
  BitMatrix aug(a.rows(), a.cols() + a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c)
      if (a.get(r, c)) aug.set(r, c, true);
    aug.set(r, a.cols() + r, true);
  }
  Reduced red = row_reduce(aug);
  // Full row rank requires every pivot within the A block and rank == rows.
  int rank_in_a = 0;
  for (int c : red.pivot_cols)
    if (c < a.cols()) ++rank_in_a;
  if (rank_in_a < a.rows()) return std::nullopt;
  BitMatrix inv(a.cols(), a.rows());
  for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) {
    int c = red.pivot_cols[k];
    if (c >= a.cols()) continue;
    for (int j = 0; j < a.rows(); ++j)
      if (red.mat.get(static_cast<int>(k), a.cols() + j)) inv.set(c, j, true);
  }
  return inv;
}

}  // namespace uas
