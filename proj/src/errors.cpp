#include "cpheat/errors.hpp"

namespace cpheat {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TooFewWindows: return "TooFewWindows";
    case ErrorCode::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorCode::PoleInC: return "PoleInC";
    case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
    case ErrorCode::DecayUnknown: return "DecayUnknown";
    case ErrorCode::DecayInsufficient: return "DecayInsufficient";
    case ErrorCode::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorCode::SingularAtOrigin: return "SingularAtOrigin";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::PoleAtZero: return "PoleAtZero";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::UnboundedRatio: return "UnboundedRatio";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

NumericError::NumericError(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw NumericError(code, detail); }

}  // namespace cpheat
