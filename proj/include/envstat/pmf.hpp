#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace envstat {

/// Finite probability mass function over outcomes 0..size()-1.
///
/// Outcome k means whatever the producer says: a Hamming weight, an energy
/// level index, or a configuration index. Masses are non-negative and sum
/// to one within `kNormTolerance`.
class Pmf {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Validates masses as given; throws NotNormalized / InvalidArgument.
  explicit Pmf(std::vector<double> masses);

  /// Normalizes non-negative weights (at least one positive).
  static Pmf from_weights(std::span<const double> weights);

  /// Normalizes log-weights with a max shift; -inf entries become zero mass.
  static Pmf from_log_weights(std::span<const double> log_weights);

  static Pmf point_mass(std::size_t size, std::size_t at);

  std::size_t size() const noexcept { return masses_.size(); }
  double operator[](std::size_t k) const { return masses_[k]; }
  /// Zero outside the stored support.
  double mass(std::size_t k) const noexcept { return k < masses_.size() ? masses_[k] : 0.0; }
  std::span<const double> masses() const noexcept { return masses_; }

  double total() const;
  double mean() const;
  double variance() const;

 private:
  std::vector<double> masses_;
};

/// ½ Σ |a_k − b_k| over the union of supports.
double total_variation(const Pmf& a, const Pmf& b);

/// max_k |a_k − b_k| over the union of supports.
double sup_distance(const Pmf& a, const Pmf& b);

}  // namespace envstat
