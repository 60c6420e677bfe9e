#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rwl {

enum class ErrorCode {
  DegenerateInput,
  DimensionMismatch,
  InvalidSector,
  InvalidRefinement,
  NormTooLarge,
  SectorTooThin,
  ZeroComponent,
  UnknownSector,
  MalformedTree,
  InternalEquivalenceViolation,
  MissingSample,
  EpsilonOutOfRange,
  NegativeValue,
  AdditivityViolation,
  PreconditionNotMet,
  DensityGapTooLarge,
  RelationViolated,
  TargetOutOfRange,
  TooManyWeights,
  InconsistentTotals,
  NotNormalized,
  IncompleteDecomposition,
  OutOfRange,
  ParseError,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` carries the failure kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSector: return "InvalidSector";
    case ErrorCode::InvalidRefinement: return "InvalidRefinement";
    case ErrorCode::NormTooLarge: return "NormTooLarge";
    case ErrorCode::SectorTooThin: return "SectorTooThin";
    case ErrorCode::ZeroComponent: return "ZeroComponent";
    case ErrorCode::UnknownSector: return "UnknownSector";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::InternalEquivalenceViolation: return "InternalEquivalenceViolation";
    case ErrorCode::MissingSample: return "MissingSample";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::AdditivityViolation: return "AdditivityViolation";
    case ErrorCode::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorCode::DensityGapTooLarge: return "DensityGapTooLarge";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::TooManyWeights: return "TooManyWeights";
    case ErrorCode::InconsistentTotals: return "InconsistentTotals";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::IncompleteDecomposition: return "IncompleteDecomposition";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace rwl
