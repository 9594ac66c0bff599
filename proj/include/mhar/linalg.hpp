#pragma once

#include <Eigen/Dense>

namespace mhar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixRef = Eigen::Ref<const Eigen::MatrixXd>;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// Relative pivot threshold below which a matrix is treated as singular.
inline constexpr double kSingularRelTol = 1e-12;

/// Dense product a*b. Throws DIMENSION_MISMATCH when inner sizes differ.
Matrix matmul(const MatrixRef& a, const MatrixRef& b);

Matrix transpose(const MatrixRef& a);

/// Inverse of a square matrix via LU with partial pivoting, followed by one
/// residual-correction pass. Throws SINGULAR_MATRIX, naming the offending
/// pivot, when any pivot falls below kSingularRelTol times the largest
/// absolute entry of the input.
Matrix invert(const MatrixRef& a);

}  // namespace mhar
