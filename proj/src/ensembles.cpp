#include "envstat/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "envstat/errors.hpp"
#include "envstat/logmath.hpp"

namespace envstat::ensembles {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxConfigs = 100'000;

// energy/step rounded to an integer; `ok` reports whether it was one.
constexpr std::int64_t kMaxBosonCutoff = std::int64_t{1} << 24;

std::int64_t quanta_of(double energy, double step, bool& ok) {
  const double q = energy / step;
  const double rounded = std::round(q);
  ok = std::abs(q - rounded) <= 1e-9 * std::max(1.0, std::abs(q));
  return static_cast<std::int64_t>(rounded);
}

// Site-occupation vector counts W(M, n) for n = 0..M·capacity, in log form.
std::vector<double> count_site_vectors(std::int64_t M, std::int64_t capacity) {
  std::vector<double> w{1.0};
  for (std::int64_t site = 0; site < M; ++site) {
    std::vector<double> next(w.size() + static_cast<std::size_t>(capacity), 0.0);
    for (std::size_t t = 0; t < w.size(); ++t) {
      for (std::int64_t a = 0; a <= capacity; ++a) next[t + static_cast<std::size_t>(a)] += w[t];
    }
    w = std::move(next);
  }
  for (double& x : w) x = std::log(x);
  return w;
}

}  // namespace

// ------------------------------------------------------------------ baths

SpinBath::SpinBath(std::int64_t M_, double epsilon_) : M(M_), epsilon(epsilon_) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "spin bath needs M >= 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "spin bath spacing must be positive");
}

double SpinBath::log_degeneracy(std::int64_t quanta) const {
  return log_binomial(static_cast<double>(M), static_cast<double>(quanta));
}

double SpinBath::beta_at(std::int64_t quanta) const {
  return std::log(static_cast<double>(M - quanta) / static_cast<double>(quanta)) / epsilon;
}

ParticleBath::ParticleBath(std::int64_t M_, double epsilon_, std::int64_t capacity_)
    : M(M_), epsilon(epsilon_), capacity(capacity_) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "particle bath needs M >= 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "particle bath spacing must be positive");
  if (capacity < 1) throw Error(ErrorCode::InvalidArgument, "site capacity must be >= 1");
  if (M * capacity > 100'000) throw Error(ErrorCode::InfeasibleEnumeration, "bath too large to count");
  log_site_counts = count_site_vectors(M, capacity);
}

double ParticleBath::log_degeneracy(std::int64_t quanta, std::int64_t particles) const {
  if (particles < 0 || particles >= static_cast<std::int64_t>(log_site_counts.size())) return kNegInf;
  return log_site_counts[static_cast<std::size_t>(particles)] +
         log_binomial(static_cast<double>(particles), static_cast<double>(quanta));
}

double ParticleBath::enumerate_degeneracy(std::int64_t quanta, std::int64_t particles) const {
  if (M > 30) throw Error(ErrorCode::InfeasibleEnumeration, "enumeration limited to M <= 30 sites");
  if (quanta < 0 || quanta > particles) return 0.0;
  std::vector<std::int64_t> occ(static_cast<std::size_t>(M), 0);
  double vectors = 0.0;
  std::size_t visited = 0;
  // Depth-first walk over site occupations with the running total pruned.
  auto walk = [&](auto&& self, std::size_t site, std::int64_t remaining) -> void {
    if (++visited > 50'000'000) throw Error(ErrorCode::InfeasibleEnumeration, "enumeration budget exhausted");
    if (site == occ.size()) {
      if (remaining == 0) vectors += 1.0;
      return;
    }
    const auto sites_left = static_cast<std::int64_t>(occ.size() - site);
    if (remaining > sites_left * capacity) return;
    for (std::int64_t a = 0; a <= std::min(capacity, remaining); ++a) {
      occ[site] = a;
      self(self, site + 1, remaining - a);
    }
  };
  walk(walk, 0, particles);
  // Excitation choices: pick which of the N particles are excited.
  double choose = 1.0;
  for (std::int64_t k = 0; k < quanta; ++k) {
    choose = choose * static_cast<double>(particles - k) / static_cast<double>(k + 1);
  }
  return vectors * choose;
}

ModeSpec ModeSpec::fermion(double epsilon) { return ModeSpec{epsilon, Statistics::Fermionic, 1}; }

ModeSpec ModeSpec::boson(double epsilon, std::int64_t cutoff) {
  if (cutoff < 1) throw Error(ErrorCode::InvalidArgument, "bosonic cutoff must be >= 1");
  return ModeSpec{epsilon, Statistics::Bosonic, cutoff};
}

ThermoParams::ThermoParams(double beta_, double mu_) : beta(beta_), mu(mu_) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
}

// -------------------------------------------------------------- canonical

Pmf canonical_from_counting(const std::vector<double>& levels, const SpinBath& bath, double E_total) {
  if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one level");
  std::vector<double> logw;
  logw.reserve(levels.size());
  for (double level : levels) {
    bool ok = false;
    const std::int64_t q = quanta_of(E_total - level, bath.epsilon, ok);
    if (!ok) {
      throw Error(ErrorCode::IncommensurateLevel, "level " + std::to_string(level) + " is not commensurate with the bath");
    }
    if (q < 0 || q > bath.M) {
      throw Error(ErrorCode::EnergyOutOfRange, "bath would need " + std::to_string(q) + " quanta");
    }
    logw.push_back(bath.log_degeneracy(q));
  }
  return Pmf::from_log_weights(logw);
}

double fit_beta(const Pmf& pmf, const std::vector<double>& levels) {
  if (pmf.size() != levels.size()) throw Error(ErrorCode::DimensionMismatch, "one level per pmf outcome");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (pmf[k] > 0.0) {
      xs.push_back(levels[k]);
      ys.push_back(-std::log(pmf[k]));
    }
  }
  if (xs.size() < 2) throw Error(ErrorCode::DegenerateFit, "need two levels with nonzero mass");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateFit, "all levels are equal");
  return sxy / sxx;
}

// --------------------------------------------------------- grand canonical

double grand_weight(const std::vector<std::int64_t>& config, const std::vector<ModeSpec>& modes,
                    const ThermoParams& params) {
  if (config.size() != modes.size()) throw Error(ErrorCode::DimensionMismatch, "one occupation per mode");
  double exponent = 0.0;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (config[k] < 0 || config[k] > modes[k].max_occupation()) {
      throw Error(ErrorCode::CapViolation, "occupation " + std::to_string(config[k]) + " of mode " +
                                               std::to_string(k) + " exceeds its cap");
    }
    exponent += static_cast<double>(config[k]) * (modes[k].epsilon - params.mu);
  }
  return std::exp(-params.beta * exponent);
}

double grand_amplitude(const std::vector<std::int64_t>& config, const std::vector<ModeSpec>& modes,
                       const ThermoParams& params) {
  return std::sqrt(grand_weight(config, modes, params));
}

std::vector<std::vector<std::int64_t>> enumerate_configs(const std::vector<ModeSpec>& modes) {
  double count = 1.0;
  for (const ModeSpec& mode : modes) count *= static_cast<double>(mode.max_occupation() + 1);
  if (count > static_cast<double>(kMaxConfigs)) {
    throw Error(ErrorCode::InfeasibleEnumeration, "more than 10^5 system configurations");
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> current(modes.size(), 0);
  while (true) {
    out.push_back(current);
    std::size_t k = modes.size();
    while (k > 0) {
      --k;
      if (++current[k] <= modes[k].max_occupation()) break;
      current[k] = 0;
      if (k == 0) return out;
    }
    if (modes.empty()) return out;
  }
}

Pmf grand_from_counting(const std::vector<ModeSpec>& system_modes, const ParticleBath& bath, double E_total,
                        std::int64_t N_total) {
  const auto configs = enumerate_configs(system_modes);
  std::vector<double> logw;
  logw.reserve(configs.size());
  for (const auto& config : configs) {
    double energy = 0.0;
    std::int64_t particles = 0;
    for (std::size_t k = 0; k < config.size(); ++k) {
      energy += static_cast<double>(config[k]) * system_modes[k].epsilon;
      particles += config[k];
    }
    bool ok = false;
    const std::int64_t q = quanta_of(E_total - energy, bath.epsilon, ok);
    if (!ok) throw Error(ErrorCode::IncommensurateLevel, "mode energies must be multiples of the bath spacing");
    logw.push_back(q < 0 ? kNegInf : bath.log_degeneracy(q, N_total - particles));
  }
  if (std::all_of(logw.begin(), logw.end(), [](double x) { return x == kNegInf; })) {
    throw Error(ErrorCode::EnergyOutOfRange, "no configuration is compatible with the bath");
  }
  return Pmf::from_log_weights(logw);
}

ThermoParams bath_thermo_params(const ParticleBath& bath, double E_total, std::int64_t N_total) {
  bool ok = false;
  const std::int64_t q = quanta_of(E_total, bath.epsilon, ok);
  if (!ok) throw Error(ErrorCode::IncommensurateLevel, "bath energy is not a whole number of quanta");
  const double d_energy = bath.log_degeneracy(q + 1, N_total) - bath.log_degeneracy(q - 1, N_total);
  const double d_number = bath.log_degeneracy(q, N_total + 1) - bath.log_degeneracy(q, N_total - 1);
  if (!std::isfinite(d_energy) || !std::isfinite(d_number)) {
    throw Error(ErrorCode::EnergyOutOfRange, "bath state at the edge of its range");
  }
  const double beta = d_energy / (2.0 * bath.epsilon);
  const double beta_mu = -0.5 * d_number;
  return ThermoParams(beta, beta_mu / beta);
}

// ------------------------------------------------------------------ modes

double mode_partition(const ModeSpec& mode, const ThermoParams& params) {
  const double x = params.beta * (mode.epsilon - params.mu);
  if (mode.statistics == Statistics::Fermionic) return 1.0 + std::exp(-x);
  if (!(x > 0.0)) throw Error(ErrorCode::BosonicDivergence, "bosonic mode needs mu < epsilon");
  return -1.0 / std::expm1(-x);
}

double mean_occupation(const ModeSpec& mode, const ThermoParams& params) {
  const double x = params.beta * (mode.epsilon - params.mu);
  if (mode.statistics == Statistics::Fermionic) return 1.0 / (std::exp(x) + 1.0);
  if (!(x > 0.0)) throw Error(ErrorCode::BosonicDivergence, "bosonic mode needs mu < epsilon");
  return 1.0 / std::expm1(x);
}

EnumeratedMode enumerate_mode(const ModeSpec& mode, const ThermoParams& params, double tail_tol) {
  const double x = params.beta * (mode.epsilon - params.mu);
  if (mode.statistics == Statistics::Fermionic) {
    const double w1 = std::exp(-x);
    const double z = 1.0 + w1;
    return {z, w1 / z, 1, 0.0};
  }
  if (!(x > 0.0)) throw Error(ErrorCode::BosonicDivergence, "bosonic mode needs mu < epsilon");
  const double r = std::exp(-x);
  std::int64_t cutoff = std::max<std::int64_t>(mode.cutoff, 1);
  while (true) {
    double z = 0.0;
    double first = 0.0;
    double w = 1.0;
    for (std::int64_t n = 0; n <= cutoff; ++n) {
      z += w;
      first += static_cast<double>(n) * w;
      w *= r;
    }
    // w now holds r^{cutoff+1}: bound the neglected mass and first moment.
    const double c = static_cast<double>(cutoff);
    const double tail = w / (1.0 - r) / z;
    const double moment_tail = w * ((c + 1.0) - c * r) / ((1.0 - r) * (1.0 - r)) / std::max(first, 1e-300);
    if (tail < tail_tol && moment_tail < tail_tol) return {z, first / z, cutoff, tail};
    if (cutoff >= kMaxBosonCutoff) {
      throw Error(ErrorCode::NonConvergence, "bosonic tail still above tolerance at cutoff " + std::to_string(cutoff));
    }
    cutoff *= 2;
  }
}

}  // namespace envstat::ensembles
