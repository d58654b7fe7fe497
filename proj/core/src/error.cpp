#include "dvp/error.hpp"

namespace dvp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SmoothnessViolation: return "SmoothnessViolation";
    case ErrorCode::ConvexityViolation: return "ConvexityViolation";
    case ErrorCode::NormalizationViolation: return "NormalizationViolation";
    case ErrorCode::NoArcFound: return "NoArcFound";
    case ErrorCode::InsideSet: return "InsideSet";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::StateCorrupt: return "StateCorrupt";
    case ErrorCode::ZeroEffectiveStress: return "ZeroEffectiveStress";
    case ErrorCode::StepRejected: return "StepRejected";
    case ErrorCode::SingularControl: return "SingularControl";
    case ErrorCode::RayEscapes: return "RayEscapes";
    case ErrorCode::SubspaceViolation: return "SubspaceViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace dvp
