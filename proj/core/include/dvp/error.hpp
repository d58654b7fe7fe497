#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dvp {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  IoError,
  // geometry
  SmoothnessViolation,
  ConvexityViolation,
  NormalizationViolation,
  NoArcFound,
  InsideSet,
  ConvergenceFailure,
  // material
  StateCorrupt,
  ZeroEffectiveStress,
  StepRejected,
  // driver
  SingularControl,
  // probe
  RayEscapes,
  SubspaceViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message names the code first so that logs can be grepped for it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dvp
