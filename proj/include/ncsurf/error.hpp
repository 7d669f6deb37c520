#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncsurf {

enum class ErrorCode {
  DomainError,
  NonTerminating,
  IncompatibleOrder,
  NoOverlap,
  DegreeZero,
  AlphaOutOfRange,
  NotRegular,
  NoRealCrossing,
  InvalidSpec,
  NonPositiveWeight,
  NoRoot,
  WindowViolation,
  StringConditionViolated,
  NegativeMu,
  NotUnitary,
  InconsistentGraph,
  NotBlockCyclic,
  NotSingleLoop,
  MixedKinds,
  NotHermitian,
  DegreeTooHigh,
  NTooSmall,
  ComplexSqrt,
  RegimeMismatch,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ncsurf
