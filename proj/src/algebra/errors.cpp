#include "wander/errors.hpp"

namespace wander {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ConstantMap: return "ConstantMap";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::TrivialReduction: return "TrivialReduction";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::SingularMobius: return "SingularMobius";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::InfiniteOrbitPoint: return "InfiniteOrbitPoint";
    case ErrorCode::InseparableOrSharedRoot: return "InseparableOrSharedRoot";
    case ErrorCode::OrbitOverflow: return "OrbitOverflow";
    case ErrorCode::SearchBudgetExhausted: return "SearchBudgetExhausted";
    case ErrorCode::RootOfUnity: return "RootOfUnity";
    case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorCode::PoleAtCenter: return "PoleAtCenter";
    case ErrorCode::PoleInDisk: return "PoleInDisk";
    case ErrorCode::ImageNotBounded: return "ImageNotBounded";
    case ErrorCode::BadLift: return "BadLift";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace wander
