#include "spinlab/error.hpp"

namespace spinlab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigSyntax: return "ConfigSyntax";
    case ErrorCode::kNotAutomorphism: return "NotAutomorphism";
    case ErrorCode::kEvenDegree: return "EvenDegree";
    case ErrorCode::kEvenClassNumber: return "EvenClassNumber";
    case ErrorCode::kC4Violation: return "C4Violation";
    case ErrorCode::kBadUnit: return "BadUnit";
    case ErrorCode::kBadDiscriminant: return "BadDiscriminant";
    case ErrorCode::kRamifiedPrime: return "RamifiedPrime";
    case ErrorCode::kGeneratorNotFound: return "GeneratorNotFound";
    case ErrorCode::kAmbiguousSign: return "AmbiguousSign";
    case ErrorCode::kConsistency: return "ConsistencyViolation";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace spinlab
