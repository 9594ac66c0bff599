#include "mhar/linalg.hpp"

#include <cmath>
#include <string>

#include "mhar/errors.hpp"

namespace mhar {

Matrix matmul(const MatrixRef& a, const MatrixRef& b) {
  if (a.cols() != b.rows()) {
    raise(ErrorCode::dimension_mismatch,
          "matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return a * b;
}

Matrix transpose(const MatrixRef& a) { return a.transpose(); }

Matrix invert(const MatrixRef& a) {
  if (a.rows() != a.cols()) {
    raise(ErrorCode::dimension_mismatch, "invert: matrix is " + std::to_string(a.rows()) + "x" +
                                             std::to_string(a.cols()) + ", expected square");
  }
  const Eigen::Index n = a.rows();
  if (n == 0) {
    raise(ErrorCode::invalid_argument, "invert: empty matrix");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0 || !std::isfinite(scale)) {
    raise(ErrorCode::singular_matrix, "invert: matrix has no finite nonzero entry");
  }

  Eigen::PartialPivLU<Matrix> lu(a);
  const Matrix& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pivot = std::abs(packed(i, i));
    if (!(pivot > kSingularRelTol * scale)) {
      raise(ErrorCode::singular_matrix, "invert: pivot " + std::to_string(i) + " has magnitude " +
                                            std::to_string(pivot) + ", below " +
                                            std::to_string(kSingularRelTol * scale));
    }
  }

  Matrix inv = lu.solve(Matrix::Identity(n, n));
  // One correction pass tightens the residual left by the factorization:
  // X <- X + X (I - A X).
  Matrix residual = Matrix::Identity(n, n) - a * inv;
  inv += inv * residual;
  return inv;
}

}  // namespace mhar
