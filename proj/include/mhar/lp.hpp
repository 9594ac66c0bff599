#pragma once

#include <vector>

#include "mhar/linalg.hpp"

namespace mhar {

enum class RowKind { less_equal, equal };
enum class VarBound { free_var, nonnegative };

/// maximize objective . x subject to rowwise constraints and per-variable
/// sign restrictions.
struct LpProblem {
  Vector objective;
  Matrix constraint_matrix;
  Vector constraint_rhs;
  std::vector<RowKind> row_kinds;
  std::vector<VarBound> variable_bounds;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector x;
  double objective_value = 0.0;
  long pivot_count = 0;
};

/// Feasibility tolerance: phase one must reduce artificial mass below this,
/// and the returned point satisfies every constraint within it.
inline constexpr double kLpFeasTol = 1e-8;

/// Reduced costs within this of zero count as optimal.
inline constexpr double kLpReducedCostTol = 1e-9;

/// Dense two-phase primal simplex. Dantzig pricing with a switch to Bland's
/// rule after a degenerate stall; exceeding the pivot budget raises
/// CYCLE_SUSPECTED. x is only meaningful when status == optimal.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace mhar
