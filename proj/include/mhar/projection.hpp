#pragma once

#include <vector>

#include "mhar/linalg.hpp"

namespace mhar {

/// Orthogonal projector onto the null space of an equality matrix, kept with
/// the pieces needed to re-anchor drifting points.
struct ProjectionOperator {
  Matrix p;             // n x n projector
  Matrix gram_inverse;  // (a_eq a_eq')^-1
  Matrix source_eq;     // the equality matrix the projector was built from
};

/// Projected direction columns with flags for those the projector collapsed.
struct ProjectedDirections {
  Matrix d;
  std::vector<int> near_zero_columns;  // columns with norm <= kNearZeroDirection
};

/// Euclidean norm at or below which a projected direction column counts as
/// collapsed and must be redrawn by the caller.
inline constexpr double kNearZeroDirection = 1e-12;

/// Builds p = I - a_eq' (a_eq a_eq')^-1 a_eq. Requires full row rank; a
/// singular Gram matrix raises RANK_DEFICIENT_EQ.
ProjectionOperator compute_projection(const MatrixRef& a_eq);

ProjectedDirections project_directions(const ProjectionOperator& op, const MatrixRef& h);

/// Pulls each column of x back onto {a_eq x = b_eq}:
/// x - a_eq' gram_inverse (a_eq x - b_eq), applied columnwise.
Matrix reproject_points(const ProjectionOperator& op, const VectorRef& b_eq, const MatrixRef& x);

}  // namespace mhar
