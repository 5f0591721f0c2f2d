#pragma once

// Canonical and grand-canonical weights from counting bath microstates, and
// the single-mode Bose/Fermi closed forms they reduce to.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "envstat/pmf.hpp"

namespace envstat::ensembles {

/// M two-level spins with spacing epsilon; q excitations carry energy
/// q·epsilon and C(M, q) microstates.
struct SpinBath {
  std::int64_t M;
  double epsilon;

  SpinBath(std::int64_t M, double epsilon);
  /// ln C(M, q); -inf outside 0 ≤ q ≤ M.
  double log_degeneracy(std::int64_t quanta) const;
  /// Analytic bath β at q quanta: ln((M − q)/q) / epsilon.
  double beta_at(std::int64_t quanta) const;
};

/// Countable particle reservoir: M sites each holding 0..capacity particles;
/// E = q·epsilon means q of the N particles are excited. Microstates:
/// W(M, N, capacity) · C(N, q), with W the number of site-occupation vectors.
struct ParticleBath {
  std::int64_t M;
  double epsilon;
  std::int64_t capacity;
  /// ln W(M, n) for n = 0..M·capacity, filled by the constructor.
  std::vector<double> log_site_counts;

  ParticleBath(std::int64_t M, double epsilon, std::int64_t capacity);
  /// ln Ω_B(q·epsilon, N); -inf when no microstate exists.
  double log_degeneracy(std::int64_t quanta, std::int64_t particles) const;
  /// Ω_B by walking every site-occupation vector; needs M ≤ 30 and a
  /// modest state count. Test oracle for log_degeneracy.
  double enumerate_degeneracy(std::int64_t quanta, std::int64_t particles) const;
};

enum class Statistics { Bosonic, Fermionic };

struct ModeSpec {
  double epsilon;
  Statistics statistics;
  /// Largest occupation enumerated; fixed at 1 for fermions.
  std::int64_t cutoff;

  static ModeSpec fermion(double epsilon);
  static ModeSpec boson(double epsilon, std::int64_t cutoff = 64);
  std::int64_t max_occupation() const noexcept { return statistics == Statistics::Fermionic ? 1 : cutoff; }
};

struct ThermoParams {
  double beta;
  double mu;

  ThermoParams(double beta, double mu);
};

/// P(ε_k) ∝ C(M, (E_total − ε_k)/ε). Throws IncommensurateLevel or
/// EnergyOutOfRange.
Pmf canonical_from_counting(const std::vector<double>& levels, const SpinBath& bath, double E_total);

/// Least-squares slope of −ln P(ε_k) against ε_k over levels with mass.
double fit_beta(const Pmf& pmf, const std::vector<double>& levels);

/// exp[−β Σ_k n_k (ε_k − μ)]. Throws CapViolation.
double grand_weight(const std::vector<std::int64_t>& config, const std::vector<ModeSpec>& modes,
                    const ThermoParams& params);

/// √grand_weight: real non-negative coefficient of the configuration in the
/// purified system–bath state.
double grand_amplitude(const std::vector<std::int64_t>& config, const std::vector<ModeSpec>& modes,
                       const ThermoParams& params);

/// Every occupation vector allowed by the modes' caps, last mode fastest.
std::vector<std::vector<std::int64_t>> enumerate_configs(const std::vector<ModeSpec>& modes);

/// Grand-canonical pmf by bath counting; outcome i is enumerate_configs()[i].
/// Mode energies must be integer multiples of the bath spacing.
Pmf grand_from_counting(const std::vector<ModeSpec>& system_modes, const ParticleBath& bath, double E_total,
                        std::int64_t N_total);

/// β and μ of the bath from centered differences of ln Ω_B, one quantum
/// per step, at (E_total, N_total).
ThermoParams bath_thermo_params(const ParticleBath& bath, double E_total, std::int64_t N_total);

/// Fermions 1 + e^{−x}; bosons 1/(1 − e^{−x}); x = β(ε − μ).
double mode_partition(const ModeSpec& mode, const ThermoParams& params);

/// 1/(e^{x} ∓ 1): − bosons, + fermions.
double mean_occupation(const ModeSpec& mode, const ThermoParams& params);

struct EnumeratedMode {
  double partition;
  double occupation;
  std::int64_t cutoff;
  double tail_mass;
};

/// Direct sum over occupations 0..cutoff. Bosonic cutoff doubles from the
/// mode's value until the neglected tail mass is below `tail_tol`; throws
/// NonConvergence past a cutoff of 2^24.
EnumeratedMode enumerate_mode(const ModeSpec& mode, const ThermoParams& params, double tail_tol = 1e-12);

}  // namespace envstat::ensembles
