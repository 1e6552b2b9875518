#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nk {

enum class ErrorCode {
  kInvalidArgument,
  kDivisionByZero,
  kNotCoprime,
  kNoConvergence,
  kCoincidentNodes,
  kInvariantViolation,
  kDegenerateStratum,
  kNotCommuting,
  kStepUnderflow,
  kContinuityMismatch,
  kMalformedInput,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code and a
// short context string (the operation plus whatever residual or location
// explains the failure).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string context_;
};

}  // namespace nk
