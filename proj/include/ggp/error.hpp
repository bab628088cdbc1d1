#pragma once

#include <stdexcept>
#include <string>

namespace ggp {

enum class ErrorCode {
  DimensionTooSmall,
  AlphaOutOfRange,
  BetaOutOfRange,
  NonpositiveIntensity,
  IntensityTooSmall,
  InvalidArgument,
  DegenerateInput,
  OriginPoint,
  OriginOutside,
  IndexOutOfRange,
  OutsideWindow,
  CosineDegenerate,
  OutsideSupport,
  EmptyInput,
  ParseError,
  ValidationError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Structured failure carrying a machine-readable code. The message names the
/// offending field or constraint.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ggp
