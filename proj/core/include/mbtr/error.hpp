#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbtr {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kZeroSum,
  kClampedBias,  // compound bias vanished after clamping negatives to zero
  kEmptyInput,
  kMissingAnnotation,
  kNotConverged,
  kProviderTransport,  // retryable
  kProviderModel,
  kProviderUnavailable,
  kDimensionDrift,
  kIo,
  kParse,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so batch drivers can
// record it per unit and keep going.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  bool retryable() const noexcept { return code_ == ErrorCode::kProviderTransport; }

 private:
  ErrorCode code_;
};

}  // namespace mbtr
