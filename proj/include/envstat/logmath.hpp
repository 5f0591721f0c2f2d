#pragma once

#include <cstdint>
#include <span>

namespace envstat {

/// ln Γ(x + 1); valid for real x ≥ 0, including counts far beyond 170!.
double log_factorial(double x);

/// ln C(n, k); returns -inf outside 0 ≤ k ≤ n.
double log_binomial(double n, double k);

/// ln Σ exp(x_i), stable against overflow. Empty input gives -inf.
double log_sum_exp(std::span<const double> xs);

/// Stirling form n ln n − n, kept only as a comparison oracle.
double stirling_log_factorial(double n);

}  // namespace envstat
