#include "mhar/projection.hpp"

#include <string>

#include "mhar/errors.hpp"

namespace mhar {

ProjectionOperator compute_projection(const MatrixRef& a_eq) {
  if (a_eq.rows() == 0) {
    raise(ErrorCode::invalid_argument, "compute_projection: equality matrix is empty");
  }
  if (a_eq.rows() >= a_eq.cols()) {
    raise(ErrorCode::rank_deficient_eq,
          "compute_projection: " + std::to_string(a_eq.rows()) + " equalities in dimension " +
              std::to_string(a_eq.cols()) + " leave no null space");
  }
  ProjectionOperator op;
  op.source_eq = a_eq;
  const Matrix gram = a_eq * a_eq.transpose();
  try {
    op.gram_inverse = invert(gram);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singular_matrix) {
      raise(ErrorCode::rank_deficient_eq,
            std::string("compute_projection: equality rows are linearly dependent (") + e.what() +
                ")");
    }
    throw;
  }
  const Matrix lift = a_eq.transpose() * op.gram_inverse;  // n x m
  op.p = Matrix::Identity(a_eq.cols(), a_eq.cols()) - lift * a_eq;
  return op;
}

ProjectedDirections project_directions(const ProjectionOperator& op, const MatrixRef& h) {
  if (h.rows() != op.p.cols()) {
    raise(ErrorCode::dimension_mismatch, "project_directions: directions have " +
                                             std::to_string(h.rows()) + " rows, projector is " +
                                             std::to_string(op.p.rows()) + "x" +
                                             std::to_string(op.p.cols()));
  }
  ProjectedDirections out;
  out.d.noalias() = op.p * h;
  for (Eigen::Index k = 0; k < out.d.cols(); ++k) {
    if (out.d.col(k).norm() <= kNearZeroDirection) {
      out.near_zero_columns.push_back(static_cast<int>(k));
    }
  }
  return out;
}

Matrix reproject_points(const ProjectionOperator& op, const VectorRef& b_eq, const MatrixRef& x) {
  if (x.rows() != op.source_eq.cols() || b_eq.size() != op.source_eq.rows()) {
    raise(ErrorCode::dimension_mismatch, "reproject_points: shapes disagree with the projector");
  }
  Matrix residual = op.source_eq * x;
  residual.colwise() -= b_eq;
  return x - op.source_eq.transpose() * (op.gram_inverse * residual);
}

}  // namespace mhar
