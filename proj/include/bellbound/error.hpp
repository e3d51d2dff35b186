#pragma once

#include <stdexcept>
#include <string>

namespace bellbound {

// Error classes used across the library. The CLI maps these onto exit codes:
// parse/format -> 2, domain (size/region/gamut/...) -> 3, numerical -> 4,
// normalization of input data -> 5.
enum class ErrorCode {
  ParseError,
  BadLength,
  DuplicateBasis,
  NotNormalized,
  BadQubitCount,
  BadRegion,
  BadAlpha,
  NegativeRadicand,
  TooLarge,
  DimensionMismatch,
  BadConcurrence,
  OutOfRange,
  DegenerateAngles,
  OutOfGamut,
  BoundaryPoint,
  EmptyGrid,
  WrongSize,
  BadArgument,
  Numerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace bellbound
