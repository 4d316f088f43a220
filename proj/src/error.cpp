#include "divmax/error.hpp"

namespace divmax {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::AlreadySelected: return "AlreadySelected";
    case ErrorCode::UnsupportedCosts: return "UnsupportedCosts";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UnknownNodeInExposure: return "UnknownNodeInExposure";
    case ErrorCode::NonBinaryExposure: return "NonBinaryExposure";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
  }
  return "Unknown";
}

}  // namespace divmax
