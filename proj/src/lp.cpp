#include "mhar/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mhar/errors.hpp"

namespace mhar {
namespace {

constexpr double kPivotTol = 1e-10;       // smallest usable pivot element
constexpr double kDriveOutTol = 1e-7;     // pivot size when expelling artificials
constexpr double kDegenerateStep = 1e-12; // ratio below which a pivot is a stall

struct Tableau {
  Matrix a;               // m x ncols, row-reduced so basic columns are unit
  Vector b;               // m, kept >= 0 up to roundoff
  Vector cost;            // reduced-cost row for the active phase
  std::vector<int> basis; // basic column per row
  long pivots = 0;
  bool bland = false;
  int stall = 0;
  long budget = 0;

  int rows() const { return static_cast<int>(a.rows()); }
  int cols() const { return static_cast<int>(a.cols()); }

  void pivot(int row, int col) {
    const double piv = a(row, col);
    a.row(row) /= piv;
    b(row) /= piv;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double factor = a(i, col);
      if (factor != 0.0) {
        a.row(i) -= factor * a.row(row);
        b(i) -= factor * b(row);
      }
    }
    const double cfactor = cost(col);
    if (cfactor != 0.0) cost -= cfactor * a.row(row).transpose();
    basis[static_cast<size_t>(row)] = col;
    ++pivots;
  }

  // One priced pivot. Returns false at optimality; throws on an unbounded ray
  // (reported by the caller as a status) via the out-parameter instead.
  bool priced_step(int limit_col, bool* unbounded) {
    int entering = -1;
    if (!bland) {
      double best = kLpReducedCostTol;
      for (int j = 0; j < limit_col; ++j) {
        if (cost(j) > best) {
          best = cost(j);
          entering = j;
        }
      }
    } else {
      for (int j = 0; j < limit_col; ++j) {
        if (cost(j) > kLpReducedCostTol) {
          entering = j;
          break;
        }
      }
    }
    if (entering < 0) return false;

    int leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows(); ++i) {
      const double coeff = a(i, entering);
      if (coeff > kPivotTol) {
        const double ratio = b(i) / coeff;
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 &&
             (leaving < 0 || basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leaving)]))) {
          best_ratio = ratio;
          leaving = i;
        }
      }
    }
    if (leaving < 0) {
      *unbounded = true;
      return false;
    }
    if (best_ratio < kDegenerateStep) {
      if (++stall > rows() + cols()) bland = true;
    } else {
      stall = 0;
    }
    pivot(leaving, entering);
    if (pivots > budget) {
      raise(ErrorCode::cycle_suspected,
            "solve_lp: pivot budget " + std::to_string(budget) + " exhausted");
    }
    return true;
  }
};

void check_problem(const LpProblem& p) {
  const Eigen::Index m = p.constraint_matrix.rows();
  const Eigen::Index n = p.constraint_matrix.cols();
  if (p.objective.size() != n || p.constraint_rhs.size() != m ||
      static_cast<Eigen::Index>(p.row_kinds.size()) != m ||
      static_cast<Eigen::Index>(p.variable_bounds.size()) != n) {
    raise(ErrorCode::dimension_mismatch, "solve_lp: problem fields have inconsistent sizes");
  }
  if (n == 0 || m == 0) {
    raise(ErrorCode::invalid_argument, "solve_lp: empty problem");
  }
  if (!p.constraint_matrix.allFinite() || !p.constraint_rhs.allFinite() ||
      !p.objective.allFinite()) {
    raise(ErrorCode::invalid_argument, "solve_lp: non-finite problem data");
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  check_problem(problem);
  const int m = static_cast<int>(problem.constraint_matrix.rows());
  const int nvars = static_cast<int>(problem.constraint_matrix.cols());

  // Expanded column layout: free variables split into a difference of two
  // nonnegative columns, then one slack per inequality row.
  std::vector<int> var_col(static_cast<size_t>(nvars));
  int ncols = 0;
  for (int v = 0; v < nvars; ++v) {
    var_col[static_cast<size_t>(v)] = ncols;
    ncols += problem.variable_bounds[static_cast<size_t>(v)] == VarBound::free_var ? 2 : 1;
  }
  const int slack_base = ncols;
  int nslacks = 0;
  for (int i = 0; i < m; ++i) {
    if (problem.row_kinds[static_cast<size_t>(i)] == RowKind::less_equal) ++nslacks;
  }
  ncols += nslacks;
  const int structural_cols = ncols;

  Tableau t;
  t.a = Matrix::Zero(m, structural_cols + m);  // room for worst-case artificials
  t.b = Vector(m);
  t.basis.assign(static_cast<size_t>(m), -1);

  int slack_at = slack_base;
  std::vector<int> row_slack(static_cast<size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    const bool flip = problem.constraint_rhs(i) < 0.0;
    const double sign = flip ? -1.0 : 1.0;
    for (int v = 0; v < nvars; ++v) {
      const double coeff = sign * problem.constraint_matrix(i, v);
      const int col = var_col[static_cast<size_t>(v)];
      if (problem.variable_bounds[static_cast<size_t>(v)] == VarBound::free_var) {
        t.a(i, col) = coeff;
        t.a(i, col + 1) = -coeff;
      } else {
        t.a(i, col) = coeff;
      }
    }
    t.b(i) = sign * problem.constraint_rhs(i);
    if (problem.row_kinds[static_cast<size_t>(i)] == RowKind::less_equal) {
      t.a(i, slack_at) = sign;
      row_slack[static_cast<size_t>(i)] = slack_at;
      ++slack_at;
    }
  }

  int nartificials = 0;
  std::vector<bool> artificial_col(static_cast<size_t>(structural_cols + m), false);
  for (int i = 0; i < m; ++i) {
    const int slack = row_slack[static_cast<size_t>(i)];
    if (slack >= 0 && t.a(i, slack) > 0.0) {
      t.basis[static_cast<size_t>(i)] = slack;  // slack with +1 coefficient starts basic
    } else {
      const int col = structural_cols + nartificials;
      t.a(i, col) = 1.0;
      t.basis[static_cast<size_t>(i)] = col;
      artificial_col[static_cast<size_t>(col)] = true;
      ++nartificials;
    }
  }
  const int total_cols = structural_cols + nartificials;
  t.a.conservativeResize(m, total_cols);
  t.budget = 10000 + 200L * (m + total_cols);

  LpSolution solution;
  bool unbounded = false;

  if (nartificials > 0) {
    // Phase one: maximize -(sum of artificials); reduced costs start as the
    // column sums over artificial-basic rows.
    t.cost = Vector::Zero(total_cols);
    for (int i = 0; i < m; ++i) {
      if (artificial_col[static_cast<size_t>(t.basis[static_cast<size_t>(i)])]) {
        t.cost += t.a.row(i).transpose();
      }
    }
    for (int j = structural_cols; j < total_cols; ++j) t.cost(j) = 0.0;
    while (t.priced_step(total_cols, &unbounded)) {
    }
    if (unbounded) {
      raise(ErrorCode::numerical_failure, "solve_lp: phase one reported an unbounded ray");
    }
    double artificial_mass = 0.0;
    for (int i = 0; i < m; ++i) {
      if (artificial_col[static_cast<size_t>(t.basis[static_cast<size_t>(i)])]) {
        artificial_mass += t.b(i);
      }
    }
    if (artificial_mass > kLpFeasTol) {
      solution.status = LpStatus::infeasible;
      solution.pivot_count = t.pivots;
      return solution;
    }
    // Expel artificials still basic at level zero; rows that offer no real
    // pivot are redundant and dropped.
    for (int i = m - 1; i >= 0; --i) {
      if (!artificial_col[static_cast<size_t>(t.basis[static_cast<size_t>(i)])]) continue;
      int col = -1;
      for (int j = 0; j < structural_cols; ++j) {
        if (std::abs(t.a(i, j)) > kDriveOutTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        t.pivot(i, col);
      } else {
        const int last = t.rows() - 1;
        if (i != last) {
          t.a.row(i) = t.a.row(last);
          t.b(i) = t.b(last);
          t.basis[static_cast<size_t>(i)] = t.basis[static_cast<size_t>(last)];
        }
        t.a.conservativeResize(last, Eigen::NoChange);
        t.b.conservativeResize(last);
        t.basis.pop_back();
      }
    }
  }

  // Phase two prices only structural columns; artificial columns beyond
  // structural_cols are dead weight and never entered.
  Vector expanded_cost = Vector::Zero(total_cols);
  for (int v = 0; v < nvars; ++v) {
    const int col = var_col[static_cast<size_t>(v)];
    expanded_cost(col) = problem.objective(v);
    if (problem.variable_bounds[static_cast<size_t>(v)] == VarBound::free_var) {
      expanded_cost(col + 1) = -problem.objective(v);
    }
  }
  t.cost = expanded_cost;
  for (int i = 0; i < t.rows(); ++i) {
    const int basic = t.basis[static_cast<size_t>(i)];
    const double cb = expanded_cost(basic);
    if (cb != 0.0) t.cost -= cb * t.a.row(i).transpose();
  }
  t.stall = 0;
  t.bland = false;
  unbounded = false;
  while (t.priced_step(structural_cols, &unbounded)) {
  }
  if (unbounded) {
    solution.status = LpStatus::unbounded;
    solution.pivot_count = t.pivots;
    return solution;
  }

  Vector expanded = Vector::Zero(total_cols);
  for (int i = 0; i < t.rows(); ++i) {
    expanded(t.basis[static_cast<size_t>(i)]) = t.b(i);
  }
  solution.x = Vector(nvars);
  for (int v = 0; v < nvars; ++v) {
    const int col = var_col[static_cast<size_t>(v)];
    solution.x(v) = problem.variable_bounds[static_cast<size_t>(v)] == VarBound::free_var
                        ? expanded(col) - expanded(col + 1)
                        : expanded(col);
  }
  solution.objective_value = problem.objective.dot(solution.x);
  solution.pivot_count = t.pivots;
  solution.status = LpStatus::optimal;

  const Vector residual = problem.constraint_matrix * solution.x - problem.constraint_rhs;
  for (int i = 0; i < m; ++i) {
    const bool bad = problem.row_kinds[static_cast<size_t>(i)] == RowKind::equal
                         ? std::abs(residual(i)) > kLpFeasTol
                         : residual(i) > kLpFeasTol;
    if (bad) {
      raise(ErrorCode::numerical_failure,
            "solve_lp: optimal basis violates row " + std::to_string(i) + " by " +
                std::to_string(std::abs(residual(i))));
    }
  }
  return solution;
}

}  // namespace mhar
