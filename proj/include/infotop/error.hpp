#pragma once

#include <stdexcept>
#include <string>

namespace infotop {

// Every recoverable failure carries one of these codes so callers (and the
// CLI exit-status mapping) can dispatch without string matching.
enum class ErrorCode {
  ClosureViolation,
  NotInUniverse,
  BudgetExceeded,
  GroundMismatch,
  ScaleOutOfRange,
  AmbiguousWitness,
  NotATopology,
  EmptyInteriorFamily,
  TheoremViolation,
  NoComplement,
  NonUniqueComplement,
  NotACover,
  TargetMismatch,
  NonCommutativeMeet,
  HypothesisViolation,
  SizeCapExceeded,
  NotIntertwining,
  NotHomeomorphism,
  HypothesisNotMet,
  IncompatibleIndexSets,
  Undecidable,
  IndexOutOfRange,
  MethodSetMismatch,
  WindowTooSmall,
  SyntaxError,
  UnresolvedReference,
  ValueOutOfRange,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace infotop
