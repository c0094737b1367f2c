#include "polygonflow/error.hpp"

namespace polygonflow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::SchemeLengthMismatch: return "SchemeLengthMismatch";
    case ErrorCode::DivisionPointOutOfRange: return "DivisionPointOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CircleDegenerate: return "CircleDegenerate";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

}  // namespace polygonflow
