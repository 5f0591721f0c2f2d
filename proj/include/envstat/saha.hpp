#pragma once

// Hydrogen ionization equilibrium H ⇌ p + e, classical and with the
// within-species indistinguishability factor Γ_ind = 1/(N_e! N_p!).

#include <optional>
#include <string>
#include <vector>

#include "envstat/constants.hpp"

namespace envstat::saha {

struct SpeciesSpec {
  double mass;  // kg
  double g;     // internal degeneracy

  void validate() const;
};

struct SahaProblem {
  double T = 1e4;                  // K
  double n_total = 1e20;           // hydrogen nuclei per m^3
  double E_I = 13.6 * 1.602176634e-19;  // J
  SpeciesSpec electron{9.1093837015e-31, 2.0};
  SpeciesSpec proton{1.67262192369e-27, 1.0};
  SpeciesSpec hydrogen{1.67262192369e-27 + 9.1093837015e-31, 2.0};
  /// Volume over which N_i = n_i V is counted for Γ_ind.
  double coherence_volume = 1e-18;
  bool correction_enabled = false;
  /// Use each species' own mass (full mass-action form) instead of
  /// m_H ≃ m_p.
  bool exact_masses = false;

  /// Hydrogen at 10^4 K, 10^20 m^-3, 13.6 eV, g_e = 2, g_p = 1, g_H = 2,
  /// with masses and eV taken from `c`.
  static SahaProblem hydrogen_default(const PhysicalConstants& c = PhysicalConstants::codata());
  double g_ratio() const { return proton.g * electron.g / hydrogen.g; }
  void validate() const;
};

struct SahaResult {
  double x;                 // ionization fraction
  double n_e;
  double n_p;
  double n_H;
  double log_K_classical;   // ln(n_p n_e / n_H) without correction, ln m^-3
  double log_Gamma_ind;     // ≤ 0; zero when the correction is off
  double residual;          // log-space residual of the solved equation
  double particles_in_volume;  // N_e = N_p = x n_total V
};

/// k_B T ln(n λ³ / g) + internal_energy.
double chemical_potential(double n, const SpeciesSpec& species, double T,
                          const PhysicalConstants& c = PhysicalConstants::codata(), double internal_energy = 0.0);

/// ln[(2π m_e k_B T / h²)^{3/2} g_ratio] − E_I/(k_B T).
double classical_saha_rhs(double T, double E_I, double g_ratio,
                          const PhysicalConstants& c = PhysicalConstants::codata());

/// ln K from the full mass-action form with all three species masses.
double exact_mass_saha_rhs(const SahaProblem& problem, const PhysicalConstants& c = PhysicalConstants::codata());

/// −ln N_e! − ln N_p!, with ln N! taken as 0 for N ≤ 1.
double log_gamma_ind(double N_e, double N_p);

/// Finds x with x²/(1−x) = K Γ_ind(x n V) / n by bisection on the
/// log-odds of x. Γ_ind decreases with x, so the equation stays monotone
/// and the self-consistent root is bracketed directly.
SahaResult solve_ionization(const SahaProblem& problem, const PhysicalConstants& c = PhysicalConstants::codata());

/// μ_H − μ_p − μ_e at the result, with μ_H carrying the −E_I binding term
/// and the hydrogen mass matching the problem's mass mode.
double mu_balance(const SahaProblem& problem, const SahaResult& result,
                  const PhysicalConstants& c = PhysicalConstants::codata());

struct CurvePoint {
  double T;
  std::optional<SahaResult> result;
  std::string error;
};

/// One solve per temperature; a failing point records its error and the
/// sweep continues.
std::vector<CurvePoint> ionization_curve(const SahaProblem& problem, const std::vector<double>& T_grid,
                                         const PhysicalConstants& c = PhysicalConstants::codata());

}  // namespace envstat::saha
