#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace issr {

enum class ErrorCode {
  kNoBlank,
  kMultipleBlanks,
  kInvalidItem,
  kParse,
  kEmptyFile,
  kDimensionMismatch,
  kEmptyPool,
  kNoParsableLines,
  kTransport,
  kRetriesExhausted,
  kBadPayload,
  kInsufficientCandidates,
  kUngradedAnswer,
  kSelectionFailed,
  kEmptyGold,
  kLengthMismatch,
  kZeroVariance,
  kUnknownSession,
  kUnknownWord,
  kSessionFinalized,
  kNotEnoughAccepted,
  kStaleRevision,
  kInvalidConfig,
  kIo,
};

// Stable identifier used in JSON error bodies and logs, e.g. "NoBlank".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace issr
