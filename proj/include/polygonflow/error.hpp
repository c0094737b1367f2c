#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polygonflow {

enum class ErrorCode {
  LengthMismatch,
  TooFewVertices,
  NonFiniteCoordinate,
  DegeneratePolygon,
  SchemeLengthMismatch,
  DivisionPointOutOfRange,
  SizeMismatch,
  IndexOutOfRange,
  CircleDegenerate,
  DegenerateFit,
  Overflow,
  ParseError,
  ValidationError,
  IoError,
  FormatError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception type; the code
// identifies the failure class, the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polygonflow
