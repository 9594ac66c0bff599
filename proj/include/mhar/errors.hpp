#pragma once

#include <stdexcept>
#include <string>

namespace mhar {

/// Failure categories carried by every thrown Error. The CLI maps these to
/// process exit codes; library callers can switch on them.
enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  singular_matrix,
  rank_deficient_eq,
  empty_polytope,
  no_interior,
  unbounded_polytope,
  direction_degenerate,
  retry_exhausted,
  cycle_suspected,
  degenerate_test,
  numerical_failure,
  io_failure,
};

/// Stable upper-case name for an ErrorCode, e.g. "RANK_DEFICIENT_EQ".
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace mhar
