#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wander {

// Stable error codes. The CLI prints these verbatim, so renaming one is a
// breaking change for scripts that consume JSON reports.
enum class ErrorCode {
  NegativeValuation,
  BothZero,
  ZeroPolynomial,
  DivisionByZero,
  FieldMismatch,
  ConstantMap,
  ZeroDenominator,
  TrivialReduction,
  DegreeCapExceeded,
  SingularMobius,
  CoincidentPoints,
  InfiniteOrbitPoint,
  InseparableOrSharedRoot,
  OrbitOverflow,
  SearchBudgetExhausted,
  RootOfUnity,
  HorizonTooSmall,
  HypothesesNotMet,
  PoleAtCenter,
  PoleInDisk,
  ImageNotBounded,
  BadLift,
  SyntaxError,
  UnknownCommand,
  UnknownExample,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wander
