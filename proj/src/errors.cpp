#include "envstat/errors.hpp"

namespace envstat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidBipartition: return "invalid-bipartition";
    case ErrorCode::DimensionOverflow: return "dimension-overflow";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NotNormalized: return "not-normalized";
    case ErrorCode::NotEnvariant: return "not-envariant";
    case ErrorCode::SupportViolation: return "support-violation";
    case ErrorCode::NonOrthonormalBasis: return "non-orthonormal-basis";
    case ErrorCode::NonQubitFactor: return "non-qubit-factor";
    case ErrorCode::TailTooHeavy: return "tail-too-heavy";
    case ErrorCode::VarianceTooSmall: return "variance-too-small";
    case ErrorCode::IncommensurateLevel: return "incommensurate-level";
    case ErrorCode::EnergyOutOfRange: return "energy-out-of-range";
    case ErrorCode::DegenerateFit: return "degenerate-fit";
    case ErrorCode::CapViolation: return "cap-violation";
    case ErrorCode::InfeasibleEnumeration: return "infeasible-enumeration";
    case ErrorCode::BosonicDivergence: return "bosonic-divergence";
    case ErrorCode::TemperatureMismatch: return "temperature-mismatch";
    case ErrorCode::NoRoot: return "no-root";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::ConstantsFile: return "constants-file";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace envstat
