#include "fintriple/error.hpp"

namespace fintriple {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PatternViolation: return "PatternViolation";
    case ErrorCode::ChiralityViolation: return "ChiralityViolation";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::NotBlockDiagonal: return "NotBlockDiagonal";
    case ErrorCode::DegenerateBlock: return "DegenerateBlock";
    case ErrorCode::ShapeUnsupported: return "ShapeUnsupported";
    case ErrorCode::AxiomFailure: return "AxiomFailure";
    case ErrorCode::DegenerateSize: return "DegenerateSize";
    case ErrorCode::AllZeroSpectrum: return "AllZeroSpectrum";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace fintriple
