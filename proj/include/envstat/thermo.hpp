#pragma once

// Ideal-gas entropies with and without the N! indistinguishability
// correction, the k_B ln N! entanglement term that links them, Gibbs mixing
// bookkeeping and the Nλ³/V degeneracy parameter.

#include <string_view>

#include "envstat/constants.hpp"

namespace envstat::thermo {

struct GasState {
  double N;        // particle count, may exceed 1e20
  double V;        // m^3
  double T;        // K
  double m;        // kg
  double g = 1.0;  // internal degeneracy

  /// Throws InvalidArgument unless every field is positive and finite.
  void validate() const;
};

enum class Counting { Classical, Quantum };
enum class Regime { Classical, Quantum };

std::string_view to_string(Regime regime);

/// h / √(2π m k_B T), metres.
double thermal_wavelength(double m, double T, const PhysicalConstants& c = PhysicalConstants::codata());

/// N k_B [ln(V/(Nλ³)) + 5/2] + N k_B ln g.
double sackur_tetrode_entropy(const GasState& gas, const PhysicalConstants& c = PhysicalConstants::codata());

/// Distinguishable-particle counting: N k_B [ln(V/λ³) + 3/2] + N k_B ln g.
double classical_entropy(const GasState& gas, const PhysicalConstants& c = PhysicalConstants::codata());

/// k_B ln N! through log-gamma.
double entanglement_entropy(double N, const PhysicalConstants& c = PhysicalConstants::codata());

/// Stirling form k_B (N ln N − N); comparison only.
double entanglement_entropy_stirling(double N, const PhysicalConstants& c = PhysicalConstants::codata());

/// S_final − S_initial when two isothermal gases share V1 + V2.
///
/// Identical gases merge into one gas of N1 + N2 particles (masses and
/// degeneracies must match); distinct gases each expand into V1 + V2.
/// Throws TemperatureMismatch.
double mixing_entropy(const GasState& gas1, const GasState& gas2, bool identical, Counting counting,
                      const PhysicalConstants& c = PhysicalConstants::codata());

/// N λ³ / V.
double degeneracy_parameter(const GasState& gas, const PhysicalConstants& c = PhysicalConstants::codata());

/// Classical when param < ratio · threshold, quantum-flagged otherwise.
Regime classify_regime(double param, double threshold = 1.0, double ratio = 0.01);

/// Room-temperature air: n = 2.5e25 m^-3 in 1 m^3, m = 4.65e-26 kg, 300 K.
GasState air_preset();

/// Rb-87 at 1 μK, n = 4.6e19 m^-3 in 1 m^3.
GasState rb87_cold_preset();

}  // namespace envstat::thermo
