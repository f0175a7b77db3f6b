#pragma once

#include <cstdint>
#include <vector>

namespace uas {

// Standard-form LP: maximize c^T z subject to M z = d, z >= 0.
// Solved by a two-phase dense tableau simplex. Entering variables are
// picked by largest reduced cost; after a stretch of degenerate pivots
// the rule switches to Bland's until the objective moves again, which
// keeps termination guaranteed.
template <typename T>
struct StandardLP {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<T>> coeff;  // rows x cols
  std::vector<T> rhs;                 // size rows
  std::vector<T> objective;           // size cols
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <typename T>
struct StandardSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<T> z;          // primal values, size cols
  std::vector<T> row_duals;  // multiplier per equality row
  std::vector<int> basis;    // basic column per row (>= cols: artificial)
  T objective{};
};

template <typename T>
StandardSolution<T> solve_standard(const StandardLP<T>& lp, std::int64_t max_iterations = 2'000'000);

}  // namespace uas
