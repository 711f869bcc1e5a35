#pragma once

#include <stdexcept>
#include <string>

namespace cpheat {

enum class ErrorCode {
  NonFinite,
  BudgetExceeded,
  TooFewWindows,
  PoleAtNonPositiveInteger,
  PoleInC,
  SeriesNotConverged,
  DecayUnknown,
  DecayInsufficient,
  UnsupportedStructure,
  SingularAtOrigin,
  UnsupportedDimension,
  PoleAtZero,
  UnknownPreset,
  HypothesisViolated,
  UnboundedRatio,
  IllConditioned,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorCode code, const std::string& detail);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace cpheat
