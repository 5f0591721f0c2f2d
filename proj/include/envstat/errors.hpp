#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace envstat {

enum class ErrorCode {
  InvalidArgument,
  InvalidBipartition,
  DimensionOverflow,
  DimensionMismatch,
  NotNormalized,
  NotEnvariant,
  SupportViolation,
  NonOrthonormalBasis,
  NonQubitFactor,
  TailTooHeavy,
  VarianceTooSmall,
  IncommensurateLevel,
  EnergyOutOfRange,
  DegenerateFit,
  CapViolation,
  InfeasibleEnumeration,
  BosonicDivergence,
  TemperatureMismatch,
  NoRoot,
  NonConvergence,
  ConstantsFile,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace envstat
