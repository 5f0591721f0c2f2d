#include "envstat/thermo.hpp"

#include <cmath>
#include <numbers>

#include "envstat/errors.hpp"
#include "envstat/logmath.hpp"

namespace envstat::thermo {

namespace {

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

GasState merged(const GasState& a, const GasState& b) { return {a.N + b.N, a.V + b.V, a.T, a.m, a.g}; }

GasState expanded(const GasState& a, double V) { return {a.N, V, a.T, a.m, a.g}; }

double entropy(const GasState& gas, Counting counting, const PhysicalConstants& c) {
  return counting == Counting::Classical ? classical_entropy(gas, c) : sackur_tetrode_entropy(gas, c);
}

}  // namespace

void GasState::validate() const {
  if (!positive(N) || !positive(V) || !positive(T) || !positive(m) || !positive(g)) {
    throw Error(ErrorCode::InvalidArgument, "gas state fields must be positive and finite");
  }
}

std::string_view to_string(Regime regime) {
  return regime == Regime::Classical ? "classical" : "quantum-flagged";
}

double thermal_wavelength(double m, double T, const PhysicalConstants& c) {
  if (!positive(m) || !positive(T)) throw Error(ErrorCode::InvalidArgument, "mass and temperature must be positive");
  return c.h / std::sqrt(2.0 * std::numbers::pi * m * c.k_B * T);
}

double sackur_tetrode_entropy(const GasState& gas, const PhysicalConstants& c) {
  gas.validate();
  const double lambda = thermal_wavelength(gas.m, gas.T, c);
  // ln(V/(Nλ³)) split so N ~ 1e30 and λ ~ 1e-12 stay in range.
  const double log_ratio = std::log(gas.V) - std::log(gas.N) - 3.0 * std::log(lambda);
  return gas.N * c.k_B * (log_ratio + 2.5 + std::log(gas.g));
}

double classical_entropy(const GasState& gas, const PhysicalConstants& c) {
  gas.validate();
  const double lambda = thermal_wavelength(gas.m, gas.T, c);
  const double log_ratio = std::log(gas.V) - 3.0 * std::log(lambda);
  return gas.N * c.k_B * (log_ratio + 1.5 + std::log(gas.g));
}

double entanglement_entropy(double N, const PhysicalConstants& c) {
  if (!(N >= 0.0)) throw Error(ErrorCode::InvalidArgument, "particle count must be non-negative");
  return c.k_B * log_factorial(N);
}

double entanglement_entropy_stirling(double N, const PhysicalConstants& c) {
  return c.k_B * stirling_log_factorial(N);
}

double mixing_entropy(const GasState& gas1, const GasState& gas2, bool identical, Counting counting,
                      const PhysicalConstants& c) {
  gas1.validate();
  gas2.validate();
  if (std::abs(gas1.T - gas2.T) > 1e-12 * std::max(gas1.T, gas2.T)) {
    throw Error(ErrorCode::TemperatureMismatch, "mixing requires equal temperatures");
  }
  const double initial = entropy(gas1, counting, c) + entropy(gas2, counting, c);
  if (identical) {
    if (gas1.m != gas2.m || gas1.g != gas2.g) {
      throw Error(ErrorCode::InvalidArgument, "identical gases must share mass and degeneracy");
    }
    return entropy(merged(gas1, gas2), counting, c) - initial;
  }
  const double V = gas1.V + gas2.V;
  return entropy(expanded(gas1, V), counting, c) + entropy(expanded(gas2, V), counting, c) - initial;
}

double degeneracy_parameter(const GasState& gas, const PhysicalConstants& c) {
  gas.validate();
  const double lambda = thermal_wavelength(gas.m, gas.T, c);
  return gas.N * lambda * lambda * lambda / gas.V;
}

Regime classify_regime(double param, double threshold, double ratio) {
  if (!(param >= 0.0)) throw Error(ErrorCode::InvalidArgument, "degeneracy parameter must be non-negative");
  return param < ratio * threshold ? Regime::Classical : Regime::Quantum;
}

GasState air_preset() { return {2.5e25, 1.0, 300.0, 4.65e-26, 1.0}; }

GasState rb87_cold_preset() { return {4.6e19, 1.0, 1e-6, 1.443e-25, 1.0}; }

}  // namespace envstat::thermo
