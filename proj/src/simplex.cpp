#include "uas/simplex.hpp"

#include <gmpxx.h>

#include <cmath>

#include "uas/errors.hpp"

namespace uas {

namespace {

template <typename T>
struct NumTraits;

template <>
struct NumTraits<double> {
  static constexpr double kEps = 1e-9;
  static bool is_zero(double v) { return std::abs(v) < kEps; }
  static bool is_pos(double v) { return v > kEps; }
  // stricter gate for pivot elements to keep elimination stable
  static bool is_pivotable(double v) { return std::abs(v) > 1e-7; }
  // only a clearly positive reduced cost may declare unboundedness
  static bool is_confidently_pos(double v) { return v > 1e-6; }
};

template <>
struct NumTraits<mpq_class> {
  static bool is_zero(const mpq_class& v) { return sgn(v) == 0; }
  static bool is_pos(const mpq_class& v) { return sgn(v) > 0; }
  static bool is_pivotable(const mpq_class& v) { return sgn(v) != 0; }
  static bool is_confidently_pos(const mpq_class& v) { return sgn(v) > 0; }
};

constexpr int kStallThreshold = 32;

int sgn_of(const mpq_class& v) { return sgn(v); }
int sgn_of(double v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

// Dense two-phase tableau. Artificial columns stay in the tableau so
// the inverse basis (and with it the row multipliers) can be read off
// at the end.
template <typename T>
class Tableau {
 public:
  using Traits = NumTraits<T>;

  explicit Tableau(const StandardLP<T>& lp)
      : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows) {
    a_.assign(m_, std::vector<T>(width_, T(0)));
    b_.assign(m_, T(0));
    basis_.resize(m_);
    flipped_.assign(m_, false);
    for (int i = 0; i < m_; ++i) {
      bool flip = sgn_of(lp.rhs[i]) < 0;
      flipped_[i] = flip;
      for (int j = 0; j < n_; ++j) a_[i][j] = flip ? T(-lp.coeff[i][j]) : lp.coeff[i][j];
      b_[i] = flip ? T(-lp.rhs[i]) : lp.rhs[i];
      a_[i][n_ + i] = T(1);
      basis_[i] = n_ + i;
    }
    allowed_.assign(width_, true);
    eligible_ = allowed_;
  }

  // One phase of the simplex for a full-width cost vector; maximizes.
  SolveStatus run_phase(const std::vector<T>& cost, std::int64_t& budget,
                        bool force_artificials_out) {
    cost_ = &cost;
    recompute_reduced_costs();
    eligible_ = allowed_;  // per-phase retirements start fresh
    bool bland = false;
    int stall = 0;
    while (true) {
      if (budget-- <= 0) return SolveStatus::kIterationLimit;
      int e = choose_entering(bland);
      if (e < 0) return SolveStatus::kOptimal;
      int r = choose_leaving(e, force_artificials_out);
      if (r < 0) {
        if (Traits::is_confidently_pos(rc_[e])) return SolveStatus::kUnbounded;
        // numerically marginal column with no usable pivot: retire it
        eligible_[e] = false;
        continue;
      }
      bool degenerate = Traits::is_zero(b_[r]);
      pivot(r, e);
      if (degenerate) {
        if (++stall >= kStallThreshold) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
    }
  }

  void forbid_artificials() {
    for (int j = n_; j < width_; ++j) allowed_[j] = false;
  }

  // Pivots basic artificials onto structural columns where possible;
  // rows with no structural entry keep their artificial pinned at zero.
  void displace_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j)
        if (Traits::is_pivotable(a_[i][j])) {
          pivot(i, j);
          break;
        }
    }
  }

  T objective_value(const std::vector<T>& cost) const {
    T v(0);
    for (int i = 0; i < m_; ++i)
      if (!Traits::is_zero(b_[i])) v += cost[basis_[i]] * b_[i];
    return v;
  }

  std::vector<T> primal() const {
    std::vector<T> z(n_, T(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) z[basis_[i]] = b_[i];
    return z;
  }

  const std::vector<int>& basis() const { return basis_; }

  std::vector<T> row_duals(const std::vector<T>& cost) const {
    std::vector<T> y(m_, T(0));
    for (int i = 0; i < m_; ++i) {
      T v(0);
      for (int r = 0; r < m_; ++r) {
        const T& cb = cost[basis_[r]];
        if (!Traits::is_zero(cb) && !Traits::is_zero(a_[r][n_ + i])) v += cb * a_[r][n_ + i];
      }
      y[i] = flipped_[i] ? T(-v) : v;
    }
    return y;
  }

 private:
  void recompute_reduced_costs() {
    rc_.assign(width_, T(0));
    for (int j = 0; j < width_; ++j) {
      T v = (*cost_)[j];
      for (int i = 0; i < m_; ++i) {
        const T& cb = (*cost_)[basis_[i]];
        if (!Traits::is_zero(cb) && !Traits::is_zero(a_[i][j])) v -= cb * a_[i][j];
      }
      rc_[j] = v;
    }
  }

  int choose_entering(bool bland) const {
    int best = -1;
    for (int j = 0; j < width_; ++j) {
      if (!eligible_[j] || !Traits::is_pos(rc_[j])) continue;
      if (bland) return j;
      if (best < 0 || rc_[j] > rc_[best]) best = j;
    }
    return best;
  }

  int choose_leaving(int e, bool force_artificials_out) const {
    if (force_artificials_out) {
      for (int i = 0; i < m_; ++i)
        if (basis_[i] >= n_ && Traits::is_pivotable(a_[i][e])) return i;
    }
    int best = -1;
    for (int i = 0; i < m_; ++i) {
      if (!Traits::is_pos(a_[i][e]) || !Traits::is_pivotable(a_[i][e])) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      // min ratio b_i / a_ie, ties by smallest basis index (Bland)
      T lhs = b_[i] * a_[best][e];
      T rhs = b_[best] * a_[i][e];
      if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[best])) best = i;
    }
    return best;
  }

  void pivot(int r, int e) {
    auto& row = a_[r];
    if (!(row[e] == T(1))) {
      T inv = T(1) / row[e];
      for (int j = 0; j < width_; ++j)
        if (!Traits::is_zero(row[j])) row[j] *= inv;
      row[e] = T(1);
      b_[r] *= inv;
    }
    nz_.clear();
    for (int j = 0; j < width_; ++j)
      if (!Traits::is_zero(row[j])) nz_.push_back(j);
    bool rhs_nz = !Traits::is_zero(b_[r]);
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      T factor = a_[i][e];
      if (Traits::is_zero(factor)) continue;
      for (int j : nz_) a_[i][j] -= factor * row[j];
      a_[i][e] = T(0);
      if (rhs_nz) b_[i] -= factor * b_[r];
    }
    if (!Traits::is_zero(rc_[e])) {
      T factor = rc_[e];
      for (int j : nz_) rc_[j] -= factor * row[j];
      rc_[e] = T(0);
    }
    basis_[r] = e;
  }

  int m_, n_, width_;
  std::vector<std::vector<T>> a_;
  std::vector<T> b_;
  std::vector<T> rc_;
  std::vector<int> basis_;
  std::vector<char> allowed_;   // artificials barred after phase 1
  std::vector<char> eligible_;  // per-phase working copy
  std::vector<bool> flipped_;
  const std::vector<T>* cost_ = nullptr;
  std::vector<int> nz_;
};

template <typename T>
bool phase1_cleared(const T& value) {
  return NumTraits<T>::is_zero(value);
}

// Doubles get a looser feasibility gate than the pivot epsilon; the
// exact validation downstream catches anything this lets through.
template <>
bool phase1_cleared(const double& value) {
  return std::abs(value) < 1e-5;
}

}  // namespace

template <typename T>
StandardSolution<T> solve_standard(const StandardLP<T>& lp, std::int64_t max_iterations) {
  StandardSolution<T> out;
  Tableau<T> tab(lp);
  std::int64_t budget = max_iterations;

  std::vector<T> phase1_cost(lp.cols + lp.rows, T(0));
  for (int j = lp.cols; j < lp.cols + lp.rows; ++j) phase1_cost[j] = T(-1);
  SolveStatus st = tab.run_phase(phase1_cost, budget, /*force_artificials_out=*/false);
  if (st == SolveStatus::kIterationLimit) {
    out.status = st;
    return out;
  }
  if (st == SolveStatus::kUnbounded) throw ValidationError("simplex: phase 1 unbounded");
  T infeas = tab.objective_value(phase1_cost);
  if (!phase1_cleared<T>(infeas)) {
    out.status = SolveStatus::kInfeasible;
    return out;
  }
  tab.displace_artificials();
  tab.forbid_artificials();

  std::vector<T> phase2_cost(lp.cols + lp.rows, T(0));
  for (int j = 0; j < lp.cols; ++j) phase2_cost[j] = lp.objective[j];
  st = tab.run_phase(phase2_cost, budget, /*force_artificials_out=*/true);
  if (st != SolveStatus::kOptimal) {
    out.status = st;
    return out;
  }
  out.status = SolveStatus::kOptimal;
  out.z = tab.primal();
  out.row_duals = tab.row_duals(phase2_cost);
  out.basis = tab.basis();
  out.objective = tab.objective_value(phase2_cost);
  return out;
}

template StandardSolution<double> solve_standard(const StandardLP<double>&, std::int64_t);
template StandardSolution<mpq_class> solve_standard(const StandardLP<mpq_class>&, std::int64_t);

}  // namespace uas
