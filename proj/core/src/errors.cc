#include "spiral/errors.h"

namespace spiral {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSize:
      return "invalid-size";
    case ErrorCode::kInvalidInstance:
      return "invalid-instance";
    case ErrorCode::kInvalidConfiguration:
      return "invalid-configuration";
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kNumericalDivergence:
      return "numerical-divergence";
    case ErrorCode::kUnboundedFeasibleSet:
      return "unbounded-feasible-set";
    case ErrorCode::kConfigParse:
      return "config-parse";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

DivergenceError::DivergenceError(int k, int j, int i)
    : Error(ErrorCode::kNumericalDivergence,
            "non-finite estimate at iteration " + std::to_string(k) +
                ", cluster " + std::to_string(j) + ", step " +
                std::to_string(i)),
      k_(k),
      j_(j),
      i_(i) {}

}  // namespace spiral
