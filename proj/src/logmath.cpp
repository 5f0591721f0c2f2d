#include "envstat/logmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace envstat {

double log_factorial(double x) { return std::lgamma(x + 1.0); }

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_sum_exp(std::span<const double> xs) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (xs.empty()) return neg_inf;
  const double peak = *std::max_element(xs.begin(), xs.end());
  if (peak == neg_inf) return neg_inf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - peak);
  return peak + std::log(acc);
}

double stirling_log_factorial(double n) {
  if (n <= 0.0) return 0.0;
  return n * std::log(n) - n;
}

}  // namespace envstat
