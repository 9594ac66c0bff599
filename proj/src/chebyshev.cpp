#include "mhar/chebyshev.hpp"

#include <string>

#include "mhar/errors.hpp"

namespace mhar {

LpProblem build_chebyshev_lp(const Polytope& p) {
  const ValidationReport report = validate(p);
  if (!report.ok) {
    const ValidationIssue& first = report.issues.front();
    if (first.code == IssueCode::rank_deficient_eq) {
      raise(ErrorCode::rank_deficient_eq, first.message);
    }
    raise(ErrorCode::invalid_argument, "build_chebyshev_lp: " + first.message);
  }

  const int n = p.dim();
  const int m_in = p.num_inequalities();
  const int m_eq = p.num_equalities();

  LpProblem lp;
  lp.objective = Vector::Zero(n + 1);
  lp.objective(n) = 1.0;  // maximize the radius variable
  lp.constraint_matrix = Matrix::Zero(m_eq + m_in, n + 1);
  lp.constraint_rhs = Vector(m_eq + m_in);
  lp.row_kinds.reserve(static_cast<size_t>(m_eq + m_in));
  for (int i = 0; i < m_eq; ++i) {
    lp.constraint_matrix.block(i, 0, 1, n) = p.a_eq.row(i);
    lp.constraint_rhs(i) = p.b_eq(i);
    lp.row_kinds.push_back(RowKind::equal);
  }
  for (int i = 0; i < m_in; ++i) {
    lp.constraint_matrix.block(m_eq + i, 0, 1, n) = p.a_in.row(i);
    lp.constraint_matrix(m_eq + i, n) = p.a_in.row(i).norm();
    lp.constraint_rhs(m_eq + i) = p.b_in(i);
    lp.row_kinds.push_back(RowKind::less_equal);
  }
  lp.variable_bounds.assign(static_cast<size_t>(n), VarBound::free_var);
  lp.variable_bounds.push_back(VarBound::nonnegative);
  return lp;
}

ChebyshevCenter chebyshev_center(const Polytope& p) {
  const LpProblem lp = build_chebyshev_lp(p);
  const LpSolution solution = solve_lp(lp);
  if (solution.status == LpStatus::infeasible) {
    raise(ErrorCode::empty_polytope, "chebyshev_center: constraint system is infeasible");
  }
  if (solution.status == LpStatus::unbounded) {
    raise(ErrorCode::unbounded_polytope, "chebyshev_center: inscribed radius is unbounded");
  }
  ChebyshevCenter center;
  center.x = solution.x.head(p.dim());
  center.radius = solution.x(p.dim());
  if (center.radius <= kMinInteriorRadius) {
    raise(ErrorCode::no_interior, "chebyshev_center: optimal radius " +
                                      std::to_string(center.radius) +
                                      " leaves no interior to walk in");
  }
  if (!contains(p, center.x, kLpFeasTol)) {
    raise(ErrorCode::numerical_failure, "chebyshev_center: computed center fails containment");
  }
  return center;
}

}  // namespace mhar
