#include "ssms/error.hpp"

namespace ssms {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidVertex: return "invalid-vertex";
    case ErrorCode::UnsupportedRealization: return "unsupported-realization";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::NonpositiveLambda: return "nonpositive-lambda";
    case ErrorCode::LambdaBelowOne: return "lambda-below-one";
    case ErrorCode::TooFewSpins: return "too-few-spins";
    case ErrorCode::InvalidSystem: return "invalid-system";
    case ErrorCode::MissingSpin: return "missing-spin";
    case ErrorCode::TooLarge: return "too-large";
    case ErrorCode::DegenerateSystem: return "degenerate-system";
    case ErrorCode::InfeasibleBoundary: return "infeasible-boundary";
    case ErrorCode::NotSeparating: return "not-separating";
    case ErrorCode::InfeasibleContext: return "infeasible-context";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidProbabilities: return "invalid-probabilities";
    case ErrorCode::BudgetExhausted: return "budget-exhausted";
    case ErrorCode::FiniteOnly: return "finite-only";
    case ErrorCode::InternalError: return "internal-error";
    case ErrorCode::MissingRate: return "missing-rate";
    case ErrorCode::InsufficientSamples: return "insufficient-samples";
    case ErrorCode::DegenerateSupport: return "degenerate-support";
    case ErrorCode::ConfigError: return "config-error";
    case ErrorCode::UnknownSuite: return "unknown-suite";
    case ErrorCode::IoError: return "io-error";
  }
  return "internal-error";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::UnknownSuite:
    case ErrorCode::ParseError:
    case ErrorCode::NonpositiveLambda:
    case ErrorCode::LambdaBelowOne:
    case ErrorCode::TooFewSpins:
    case ErrorCode::InvalidSystem:
    case ErrorCode::InvalidVertex:
    case ErrorCode::UnsupportedRealization:
      return 2;
    case ErrorCode::BudgetExhausted: return 3;
    case ErrorCode::InfeasibleContext:
    case ErrorCode::InfeasibleBoundary:
      return 4;
    case ErrorCode::TooLarge: return 5;
    case ErrorCode::DegenerateSystem: return 6;
    case ErrorCode::IoError: return 7;
    default: return 8;
  }
}

}  // namespace ssms
