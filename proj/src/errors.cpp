#include "mhar/errors.hpp"

namespace mhar {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return "INVALID_ARGUMENT";
    case ErrorCode::dimension_mismatch:
      return "DIMENSION_MISMATCH";
    case ErrorCode::singular_matrix:
      return "SINGULAR_MATRIX";
    case ErrorCode::rank_deficient_eq:
      return "RANK_DEFICIENT_EQ";
    case ErrorCode::empty_polytope:
      return "EMPTY_POLYTOPE";
    case ErrorCode::no_interior:
      return "NO_INTERIOR";
    case ErrorCode::unbounded_polytope:
      return "UNBOUNDED_POLYTOPE";
    case ErrorCode::direction_degenerate:
      return "DIRECTION_DEGENERATE";
    case ErrorCode::retry_exhausted:
      return "RETRY_EXHAUSTED";
    case ErrorCode::cycle_suspected:
      return "CYCLE_SUSPECTED";
    case ErrorCode::degenerate_test:
      return "DEGENERATE_TEST";
    case ErrorCode::numerical_failure:
      return "NUMERICAL_FAILURE";
    case ErrorCode::io_failure:
      return "IO_FAILURE";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace mhar
