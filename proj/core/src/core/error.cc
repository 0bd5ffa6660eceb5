#include "issr/core/error.h"

namespace issr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoBlank: return "NoBlank";
    case ErrorCode::kMultipleBlanks: return "MultipleBlanks";
    case ErrorCode::kInvalidItem: return "InvalidItem";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kNoParsableLines: return "NoParsableLines";
    case ErrorCode::kTransport: return "Transport";
    case ErrorCode::kRetriesExhausted: return "RetriesExhausted";
    case ErrorCode::kBadPayload: return "BadPayload";
    case ErrorCode::kInsufficientCandidates: return "InsufficientCandidates";
    case ErrorCode::kUngradedAnswer: return "UngradedAnswer";
    case ErrorCode::kSelectionFailed: return "SelectionFailed";
    case ErrorCode::kEmptyGold: return "EmptyGold";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kUnknownSession: return "UnknownSession";
    case ErrorCode::kUnknownWord: return "UnknownWord";
    case ErrorCode::kSessionFinalized: return "SessionFinalized";
    case ErrorCode::kNotEnoughAccepted: return "NotEnoughAccepted";
    case ErrorCode::kStaleRevision: return "StaleRevision";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace issr
