#include "evdom/errors.hpp"

namespace evdom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotPositiveSemigroup: return "NotPositiveSemigroup";
    case ErrorCode::kSpectralOrderViolated: return "SpectralOrderViolated";
    case ErrorCode::kNoStrongPositivity: return "NoStrongPositivity";
    case ErrorCode::kNoGap: return "NoGap";
    case ErrorCode::kEllipticityViolated: return "EllipticityViolated";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kNotVertexDof: return "NotVertexDOF";
    case ErrorCode::kNonPositiveInput: return "NonPositiveInput";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace evdom
