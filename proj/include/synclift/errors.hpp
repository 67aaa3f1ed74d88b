#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace synclift {

enum class ErrorCode {
  NonHermitianInput,
  NumericalFailure,
  DimensionMismatch,
  NotPositiveContraction,
  InvalidFunctionRange,
  AnswerCountExceedsDim,
  BlockLeakage,
  PadLastNotProjection,
  RemainderTooNegative,
  EmptySequence,
  InvalidRep,
  ShapeMismatch,
  SearchSpaceTooLarge,
  InvalidArgument,
  MalformedInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveContraction: return "NotPositiveContraction";
    case ErrorCode::InvalidFunctionRange: return "InvalidFunctionRange";
    case ErrorCode::AnswerCountExceedsDim: return "AnswerCountExceedsDim";
    case ErrorCode::BlockLeakage: return "BlockLeakage";
    case ErrorCode::PadLastNotProjection: return "PadLastNotProjection";
    case ErrorCode::RemainderTooNegative: return "RemainderTooNegative";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::InvalidRep: return "InvalidRep";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace synclift
