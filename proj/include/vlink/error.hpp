#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vlink {

enum class ErrorCode {
  DuplicateSlot,
  MissingSlot,
  NegativeCount,
  IndexOutOfRange,
  SymmetryViolation,
  NotOrthogonal,
  SizeLimit,
  ContractionTooLarge,
  KTooLarge,
  GroundMismatch,
  GroundNotDivisible,
  InvalidPartition,
  InvalidTableau,
  Parse,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSlot: return "DuplicateSlot";
    case ErrorCode::MissingSlot: return "MissingSlot";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::ContractionTooLarge: return "ContractionTooLarge";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::GroundMismatch: return "GroundMismatch";
    case ErrorCode::GroundNotDivisible: return "GroundNotDivisible";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidTableau: return "InvalidTableau";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending slot, index or field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vlink
