#include "envstat/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "envstat/errors.hpp"

namespace envstat {

namespace {

// Neumaier summation: pmfs with 10^6+ entries still need 1e-12 totals.
double stable_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

Pmf::Pmf(std::vector<double> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw Error(ErrorCode::InvalidArgument, "pmf needs at least one outcome");
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw Error(ErrorCode::InvalidArgument, "pmf masses must be finite and non-negative");
    }
  }
  if (std::abs(total() - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::NotNormalized, "pmf masses sum to " + std::to_string(total()));
  }
}

Pmf Pmf::from_weights(std::span<const double> weights) {
  const double z = stable_sum(weights);
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::InvalidArgument, "weights must have a positive finite sum");
  }
  std::vector<double> masses(weights.begin(), weights.end());
  for (double& m : masses) m /= z;
  return Pmf(std::move(masses));
}

Pmf Pmf::from_log_weights(std::span<const double> log_weights) {
  if (log_weights.empty()) throw Error(ErrorCode::InvalidArgument, "empty log-weights");
  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(peak)) throw Error(ErrorCode::InvalidArgument, "no finite log-weight");
  std::vector<double> w(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), w.begin(),
                 [peak](double lw) { return std::exp(lw - peak); });
  return from_weights(w);
}

Pmf Pmf::point_mass(std::size_t size, std::size_t at) {
  std::vector<double> masses(size, 0.0);
  masses.at(at) = 1.0;
  return Pmf(std::move(masses));
}

double Pmf::total() const { return stable_sum(masses_); }

double Pmf::mean() const {
  std::vector<double> terms(masses_.size());
  for (std::size_t k = 0; k < masses_.size(); ++k) terms[k] = static_cast<double>(k) * masses_[k];
  return stable_sum(terms);
}

double Pmf::variance() const {
  const double mu = mean();
  std::vector<double> terms(masses_.size());
  for (std::size_t k = 0; k < masses_.size(); ++k) {
    const double d = static_cast<double>(k) - mu;
    terms[k] = d * d * masses_[k];
  }
  return stable_sum(terms);
}

double total_variation(const Pmf& a, const Pmf& b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> diffs(n);
  for (std::size_t k = 0; k < n; ++k) diffs[k] = std::abs(a.mass(k) - b.mass(k));
  return 0.5 * stable_sum(diffs);
}

double sup_distance(const Pmf& a, const Pmf& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(a.mass(k) - b.mass(k)));
  return worst;
}

}  // namespace envstat
