#pragma once

#include <stdexcept>
#include <string>

namespace pmdtk {

enum class ErrorCode {
  NegativeEntry,
  RowSumViolation,
  SupportTooLarge,
  DimensionMismatch,
  ZeroDirection,
  BadPivot,
  BadC,
  AlphaTooLarge,
  TooFewSamples,
  NotPSD,
  InconsistentBlocks,
  BudgetTooSmall,
  PremiseViolated,
  NullspaceMismatch,
  Singular,
  BadOrder,
  ZeroVariance,
  NotLaplacian,
  EigenMinBelowOne,
  CapExceeded,
  Infeasible,
  SolverIterationLimit,
  PeelStuck,
  LpTooLarge,
  NoFeasibleGuess,
  Failure,
  TooLarge,
  NoMomentWitness,
  Exhausted,
  UnknownCommand,
  BadConfig,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pmdtk
