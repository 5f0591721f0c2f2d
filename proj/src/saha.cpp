#include "envstat/saha.hpp"

#include <cmath>
#include <numbers>

#include "envstat/errors.hpp"
#include "envstat/logmath.hpp"
#include "envstat/thermo.hpp"

namespace envstat::saha {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kResidualTolerance = 1e-10;
constexpr double kMaxCount = 1e30;

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

// ln(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double logistic(double t) { return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

double log_count_factorial(double n) { return n <= 1.0 ? 0.0 : log_factorial(n); }

}  // namespace

void SpeciesSpec::validate() const {
  if (!positive(mass)) throw Error(ErrorCode::InvalidArgument, "species mass must be positive");
  if (!(g >= 1.0) || !std::isfinite(g)) throw Error(ErrorCode::InvalidArgument, "species degeneracy must be >= 1");
}

SahaProblem SahaProblem::hydrogen_default(const PhysicalConstants& c) {
  SahaProblem p;
  p.E_I = 13.6 * c.eV;
  p.electron = {c.m_e, 2.0};
  p.proton = {c.m_p, 1.0};
  p.hydrogen = {c.m_p + c.m_e, 2.0};
  return p;
}

void SahaProblem::validate() const {
  if (!positive(T)) throw Error(ErrorCode::InvalidArgument, "temperature must be positive");
  if (!positive(n_total)) throw Error(ErrorCode::InvalidArgument, "density must be positive");
  if (!positive(E_I)) throw Error(ErrorCode::InvalidArgument, "ionization energy must be positive");
  if (!positive(coherence_volume)) throw Error(ErrorCode::InvalidArgument, "coherence volume must be positive");
  if (n_total * coherence_volume > kMaxCount) {
    throw Error(ErrorCode::InvalidArgument, "n_total * coherence_volume exceeds 1e30 particles");
  }
  electron.validate();
  proton.validate();
  hydrogen.validate();
}

double chemical_potential(double n, const SpeciesSpec& species, double T, const PhysicalConstants& c,
                          double internal_energy) {
  if (!positive(n)) throw Error(ErrorCode::InvalidArgument, "density must be positive");
  species.validate();
  const double lambda = thermo::thermal_wavelength(species.mass, T, c);
  return c.k_B * T * (std::log(n) + 3.0 * std::log(lambda) - std::log(species.g)) + internal_energy;
}

double classical_saha_rhs(double T, double E_I, double g_ratio, const PhysicalConstants& c) {
  if (!positive(T)) throw Error(ErrorCode::InvalidArgument, "temperature must be positive");
  const double kT = c.k_B * T;
  return 1.5 * std::log(2.0 * std::numbers::pi * c.m_e * kT / (c.h * c.h)) + std::log(g_ratio) - E_I / kT;
}

double exact_mass_saha_rhs(const SahaProblem& problem, const PhysicalConstants& c) {
  const double T = problem.T;
  const double lh = thermo::thermal_wavelength(problem.hydrogen.mass, T, c);
  const double lp = thermo::thermal_wavelength(problem.proton.mass, T, c);
  const double le = thermo::thermal_wavelength(problem.electron.mass, T, c);
  return std::log(problem.g_ratio()) + 3.0 * (std::log(lh) - std::log(lp) - std::log(le)) -
         problem.E_I / (c.k_B * T);
}

double log_gamma_ind(double N_e, double N_p) {
  if (!(N_e >= 0.0) || !(N_p >= 0.0)) throw Error(ErrorCode::InvalidArgument, "particle counts must be non-negative");
  return 0.0 - log_count_factorial(N_e) - log_count_factorial(N_p);
}

SahaResult solve_ionization(const SahaProblem& problem, const PhysicalConstants& c) {
  problem.validate();
  const double log_K = problem.exact_masses ? exact_mass_saha_rhs(problem, c)
                                            : classical_saha_rhs(problem.T, problem.E_I, problem.g_ratio(), c);
  const double log_n = std::log(problem.n_total);
  const double count_scale = problem.n_total * problem.coherence_volume;

  // Residual of 2 ln x − ln(1−x) = ln K + ln Γ_ind(x) − ln n at log-odds t.
  auto correction = [&](double t) {
    if (!problem.correction_enabled) return 0.0;
    const double N = logistic(t) * count_scale;
    return log_gamma_ind(N, N);
  };
  auto residual = [&](double t) { return -2.0 * softplus(-t) + softplus(t) + log_n - log_K - correction(t); };

  double lo = -1.0;
  double hi = 1.0;
  while (residual(lo) > 0.0) {
    lo *= 2.0;
    if (lo < -1e7) throw Error(ErrorCode::NoRoot, "ionization fraction below representable range");
  }
  while (residual(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e7) throw Error(ErrorCode::NoRoot, "ionization fraction above representable range");
  }

  double t = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    t = 0.5 * (lo + hi);
    if (t == lo || t == hi) break;
    const double r = residual(t);
    if (r == 0.0) break;
    (r < 0.0 ? lo : hi) = t;
  }
  const double r = residual(t);
  const bool collapsed = std::nextafter(lo, hi) >= hi;
  if (std::abs(r) > kResidualTolerance && !collapsed) {
    throw Error(ErrorCode::NonConvergence, "bisection residual " + std::to_string(r));
  }

  SahaResult out{};
  out.x = logistic(t);
  out.n_p = out.x * problem.n_total;
  out.n_e = out.n_p;
  out.n_H = logistic(-t) * problem.n_total;
  out.log_K_classical = log_K;
  out.log_Gamma_ind = correction(t);
  out.residual = r;
  out.particles_in_volume = out.x * count_scale;
  return out;
}

double mu_balance(const SahaProblem& problem, const SahaResult& result, const PhysicalConstants& c) {
  SpeciesSpec hydrogen = problem.hydrogen;
  if (!problem.exact_masses) hydrogen.mass = problem.proton.mass;
  const double mu_h = chemical_potential(result.n_H, hydrogen, problem.T, c, -problem.E_I);
  const double mu_p = chemical_potential(result.n_p, problem.proton, problem.T, c);
  const double mu_e = chemical_potential(result.n_e, problem.electron, problem.T, c);
  return mu_h - mu_p - mu_e;
}

std::vector<CurvePoint> ionization_curve(const SahaProblem& problem, const std::vector<double>& T_grid,
                                         const PhysicalConstants& c) {
  if (T_grid.empty()) throw Error(ErrorCode::InvalidArgument, "temperature grid is empty");
  std::vector<CurvePoint> out;
  out.reserve(T_grid.size());
  for (double T : T_grid) {
    SahaProblem point = problem;
    point.T = T;
    try {
      out.push_back({T, solve_ionization(point, c), {}});
    } catch (const Error& e) {
      out.push_back({T, std::nullopt, e.what()});
    }
  }
  return out;
}

}  // namespace envstat::saha
