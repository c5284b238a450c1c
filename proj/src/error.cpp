#include "hitchin/error.hpp"

namespace hitchin {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::BadGenus: return "BadGenus";
    case ErrorCode::NonPositiveDimension: return "NonPositiveDimension";
    case ErrorCode::IncompatibleDivisor: return "IncompatibleDivisor";
    case ErrorCode::StrictlySemistable: return "StrictlySemistable";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::IncompatibleModulus: return "IncompatibleModulus";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::OriginEvaluation: return "OriginEvaluation";
    case ErrorCode::GridTouchesOrigin: return "GridTouchesOrigin";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::NonMonotoneOutput: return "NonMonotoneOutput";
    case ErrorCode::StratumMismatch: return "StratumMismatch";
    case ErrorCode::NonPositiveRate: return "NonPositiveRate";
    case ErrorCode::PathHitsZero: return "PathHitsZero";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::NonIntegrableSingularity: return "NonIntegrableSingularity";
    case ErrorCode::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorCode::EvenZeroChart: return "EvenZeroChart";
    case ErrorCode::CycleCountMismatch: return "CycleCountMismatch";
    case ErrorCode::RiemannRelationViolation: return "RiemannRelationViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NewtonDivergence:
    case ErrorCode::NonMonotoneOutput:
    case ErrorCode::NonPositiveRate:
    case ErrorCode::BranchAmbiguity:
    case ErrorCode::RiemannRelationViolation:
    case ErrorCode::NumericalFailure:
      return true;
    default:
      return false;
  }
}

}  // namespace hitchin
