#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fintriple {

enum class ErrorCode {
  SizeTooSmall,
  EmptySelection,
  DimensionMismatch,
  PatternViolation,
  ChiralityViolation,
  SymmetryViolation,
  NotBlockDiagonal,
  DegenerateBlock,
  ShapeUnsupported,
  AxiomFailure,
  DegenerateSize,
  AllZeroSpectrum,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fintriple
