#include "mbtr/error.hpp"

namespace mbtr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kZeroSum: return "zero_sum";
    case ErrorCode::kClampedBias: return "clamped_bias";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kMissingAnnotation: return "missing_annotation";
    case ErrorCode::kNotConverged: return "not_converged";
    case ErrorCode::kProviderTransport: return "provider_transport";
    case ErrorCode::kProviderModel: return "provider_model";
    case ErrorCode::kProviderUnavailable: return "provider_unavailable";
    case ErrorCode::kDimensionDrift: return "dimension_drift";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mbtr
