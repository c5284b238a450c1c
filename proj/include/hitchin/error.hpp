#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hitchin {

enum class ErrorCode {
  // strata
  SumMismatch,
  BadGenus,
  NonPositiveDimension,
  IncompatibleDivisor,
  StrictlySemistable,
  OutOfRange,
  // hecke_local
  ModulusMismatch,
  NotInvertible,
  IncompatibleModulus,
  ConstraintViolated,
  OriginEvaluation,
  GridTouchesOrigin,
  // painleve / model_ray / glue
  NonPositiveArgument,
  NewtonDivergence,
  NonMonotoneOutput,
  StratumMismatch,
  NonPositiveRate,
  // periods
  PathHitsZero,
  BranchAmbiguity,
  NonIntegrableSingularity,
  ZeroOnBoundary,
  EvenZeroChart,
  CycleCountMismatch,
  RiemannRelationViolation,
  DimensionMismatch,
  ZeroInput,
  // cli
  ConfigError,
  NumericalFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of the numerical machinery (as opposed to bad input).
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hitchin
