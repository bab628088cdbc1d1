#include "ggp/error.hpp"

namespace ggp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::NonpositiveIntensity: return "NonpositiveIntensity";
    case ErrorCode::IntensityTooSmall: return "IntensityTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::OriginPoint: return "OriginPoint";
    case ErrorCode::OriginOutside: return "OriginOutside";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OutsideWindow: return "OutsideWindow";
    case ErrorCode::CosineDegenerate: return "CosineDegenerate";
    case ErrorCode::OutsideSupport: return "OutsideSupport";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ggp
