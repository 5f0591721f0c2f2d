#pragma once

// Coarse-grained counting laws obtained from equal-weight fine-grained
// states: binomial by Hamming-weight counting, biased binomial via ancilla
// embedding, Poisson and Gaussian limits with their error metrics.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "envstat/envcore.hpp"
#include "envstat/pmf.hpp"

namespace envstat::distrib {

inline constexpr std::int64_t kMaxBinomialN = 10'000'000;
inline constexpr std::int64_t kMaxDickeN = 1'000'000;

/// Rational bias p = m / M realized by M equiprobable ancilla labels per
/// subsystem, m of them attached to "up".
struct AncillaEmbedding {
  std::int64_t m;
  std::int64_t M;
  std::int64_t N;

  /// Throws InvalidArgument unless 0 < m < M and N ≥ 1.
  AncillaEmbedding(std::int64_t m, std::int64_t M, std::int64_t N);
  double p() const noexcept { return static_cast<double>(m) / static_cast<double>(M); }
};

/// Probability of n up-spins among `system_qubits`, summing |amp|² over
/// matching basis strings. Throws NonQubitFactor.
Pmf hamming_weight_distribution(const envcore::PureState& state, const std::vector<std::size_t>& system_qubits);

/// C(N,n) p^n (1−p)^{N−n}, log-domain, renormalized.
Pmf binomial_pmf(std::int64_t N, double p);

/// ln[C(N,n) m^n (M−m)^{N−n}]: fine-grained strings carrying n up-spins.
double ancilla_fine_count(const AncillaEmbedding& emb, std::int64_t n);

/// ⊗_i (√p|1> + √(1−p)|0>) on N qubits.
envcore::PureState make_product_state(std::size_t N, double p);

/// Explicit ancilla-embedded state: per subsystem (1/√M) Σ_j |s(j)>|j>
/// where s(j) is up for j < m. Factor order is (qubit, ancilla) per
/// subsystem. Limited to M^N ≤ 2^20.
envcore::PureState make_ancilla_state(const AncillaEmbedding& emb);

/// √C(N,n) p^{n/2} (1−p)^{(N−n)/2}: amplitude of the weight-n Dicke state.
std::vector<double> dicke_amplitudes(std::int64_t N, double p);

/// Normalized Dicke state |D_n^{(N)}> on N qubits.
envcore::PureState make_dicke_state(std::size_t N, std::size_t n);

/// λ^n e^{−λ} / n! on 0..n_max. Throws TailTooHeavy when the omitted tail
/// exceeds 1e-15.
Pmf poisson_pmf(double lambda, std::int64_t n_max);

/// Support end where the log-mass has fallen 40 nats below the mode.
std::int64_t poisson_support_end(double lambda);

/// Poisson truncated at poisson_support_end(lambda).
Pmf poisson_pmf(double lambda);

/// Total variation between Binomial(N, λ/N) and Poisson(λ).
double poisson_limit_error(std::int64_t N, double lambda);

/// n ↦ exp[−(n−Np)²/(2σ²)] / √(2πσ²) with σ² = Np(1−p). Throws
/// VarianceTooSmall when σ² < 1.
std::function<double(double)> gaussian_approx(std::int64_t N, double p);

/// max_n |binomial(n) − gaussian(n)| over 0..N.
double gaussian_sup_error(std::int64_t N, double p);

}  // namespace envstat::distrib
