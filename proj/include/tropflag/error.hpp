#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropflag {

// Every failure the library can report. The name of each enumerator is the
// name printed by the CLI and used in JSON reports.
enum class ErrorCode {
  TagMismatch,
  AbsentOperand,
  NonPositiveEvaluation,
  ParseError,
  BoundExceeded,
  NotBruhatBelow,
  InvalidAutomorphism,
  UnsupportedType,
  PositivityViolation,
  DimensionMismatch,
  SchemaError,
  InvariantViolation,
  NotAPermutation,
  NotExtremal,
  CrossCheckMismatch,
  DomainViolation,
  ZeroVector,
  RelationFailure,
  InjectivityFailure,
  IntermediateDomainViolation,
  OracleMismatch,
  SupportInstability,
  ReducedWordDependence,
  NotInCell,
  PeelFailure,
  UnknownSupport,
  DuplicateSupport,
  NotDecomposable,
  IntertwinerFailure,
  LambdaNotFixed,
  LambdaNotDominant,
  LambdaNotVeryDominant,
  FixedPointMismatch,
  UsageError,
};

std::string_view to_string(ErrorCode code);

// Exit-code family of an error: 1 property failure, 2 data error, 3 usage.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace tropflag
