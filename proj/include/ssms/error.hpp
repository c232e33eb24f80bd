#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssms {

// Every failure the library reports carries one of these codes. The CLI prints
// the code verbatim, so the spelling is part of the external interface.
enum class ErrorCode {
  InvalidVertex,
  UnsupportedRealization,
  ParseError,
  NonpositiveLambda,
  LambdaBelowOne,
  TooFewSpins,
  InvalidSystem,
  MissingSpin,
  TooLarge,
  DegenerateSystem,
  InfeasibleBoundary,
  NotSeparating,
  InfeasibleContext,
  DimensionMismatch,
  InvalidProbabilities,
  BudgetExhausted,
  FiniteOnly,
  InternalError,
  MissingRate,
  InsufficientSamples,
  DegenerateSupport,
  ConfigError,
  UnknownSuite,
  IoError,
};

std::string_view code_name(ErrorCode code);

// Process exit status the CLI uses for a given code (always nonzero).
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ssms
