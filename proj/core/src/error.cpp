#include "dirac/error.hpp"

namespace dirac {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::BranchDegenerate: return "BranchDegenerate";
    case ErrorCode::ZeroBase: return "ZeroBase";
    case ErrorCode::OnPole: return "OnPole";
    case ErrorCode::ZeroTransmission: return "ZeroTransmission";
    case ErrorCode::ThresholdSingular: return "ThresholdSingular";
    case ErrorCode::DegenerateIndex: return "DegenerateIndex";
    case ErrorCode::NoResonanceInBracket: return "NoResonanceInBracket";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ProfileNotCompact: return "ProfileNotCompact";
    case ErrorCode::OracleUnsupported: return "OracleUnsupported";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace dirac
