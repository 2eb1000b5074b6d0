#include "tropflag/error.hpp"

namespace tropflag {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::AbsentOperand: return "AbsentOperand";
    case ErrorCode::NonPositiveEvaluation: return "NonPositiveEvaluation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::NotBruhatBelow: return "NotBruhatBelow";
    case ErrorCode::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotExtremal: return "NotExtremal";
    case ErrorCode::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RelationFailure: return "RelationFailure";
    case ErrorCode::InjectivityFailure: return "InjectivityFailure";
    case ErrorCode::IntermediateDomainViolation: return "IntermediateDomainViolation";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::SupportInstability: return "SupportInstability";
    case ErrorCode::ReducedWordDependence: return "ReducedWordDependence";
    case ErrorCode::NotInCell: return "NotInCell";
    case ErrorCode::PeelFailure: return "PeelFailure";
    case ErrorCode::UnknownSupport: return "UnknownSupport";
    case ErrorCode::DuplicateSupport: return "DuplicateSupport";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::IntertwinerFailure: return "IntertwinerFailure";
    case ErrorCode::LambdaNotFixed: return "LambdaNotFixed";
    case ErrorCode::LambdaNotDominant: return "LambdaNotDominant";
    case ErrorCode::LambdaNotVeryDominant: return "LambdaNotVeryDominant";
    case ErrorCode::FixedPointMismatch: return "FixedPointMismatch";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UsageError:
    case ErrorCode::LambdaNotVeryDominant:
    case ErrorCode::LambdaNotDominant:
    case ErrorCode::UnsupportedType:
    case ErrorCode::BoundExceeded:
      return 3;
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::PositivityViolation:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvariantViolation:
    case ErrorCode::NotAPermutation:
    case ErrorCode::NotExtremal:
    case ErrorCode::CrossCheckMismatch:
    case ErrorCode::TagMismatch:
    case ErrorCode::NotInCell:
    case ErrorCode::UnknownSupport:
    case ErrorCode::ZeroVector:
    case ErrorCode::NotDecomposable:
    case ErrorCode::LambdaNotFixed:
    case ErrorCode::InvalidAutomorphism:
    case ErrorCode::NotBruhatBelow:
    case ErrorCode::DomainViolation:
    case ErrorCode::AbsentOperand:
    case ErrorCode::NonPositiveEvaluation:
      return 2;
    default:
      return 1;
  }
}

}  // namespace tropflag
