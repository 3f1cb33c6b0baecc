#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dirac {

enum class ErrorCode {
  InvalidArgument,
  DegenerateParameter,
  NonConvergence,
  BranchDegenerate,
  ZeroBase,
  OnPole,
  ZeroTransmission,
  ThresholdSingular,
  DegenerateIndex,
  NoResonanceInBracket,
  StepTooLarge,
  ProfileNotCompact,
  OracleUnsupported,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dirac
