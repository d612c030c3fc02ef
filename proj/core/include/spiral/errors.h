#ifndef SPIRAL_ERRORS_H_
#define SPIRAL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace spiral {

enum class ErrorCode {
  kInvalidSize,
  kInvalidInstance,
  kInvalidConfiguration,
  kInvalidArgument,
  kNumericalDivergence,
  kUnboundedFeasibleSet,
  kConfigParse,
  kIo,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when an update produces a non-finite value. Carries the location
// (iteration k, cluster j, sub-step i) of the first bad value.
class DivergenceError : public Error {
 public:
  DivergenceError(int k, int j, int i);

  int iteration() const noexcept { return k_; }
  int cluster() const noexcept { return j_; }
  int step() const noexcept { return i_; }

 private:
  int k_;
  int j_;
  int i_;
};

}  // namespace spiral

#endif  // SPIRAL_ERRORS_H_
