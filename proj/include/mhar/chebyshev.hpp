#pragma once

#include "mhar/lp.hpp"
#include "mhar/polytope.hpp"

namespace mhar {

struct ChebyshevCenter {
  Vector x;
  double radius = 0.0;
};

/// LP for the largest ball inside the polytope: maximize r over (x, r) with
/// a_eq x = b_eq and a_i x + |a_i| r <= b_i per inequality row; x free,
/// r nonnegative.
LpProblem build_chebyshev_lp(const Polytope& p);

/// Radius at or below this means the feasible set has no interior.
inline constexpr double kMinInteriorRadius = 1e-10;

/// Solves the centering LP. Raises EMPTY_POLYTOPE when infeasible,
/// UNBOUNDED_POLYTOPE when the radius grows without bound, NO_INTERIOR when
/// the optimal radius is not positive.
ChebyshevCenter chebyshev_center(const Polytope& p);

}  // namespace mhar
