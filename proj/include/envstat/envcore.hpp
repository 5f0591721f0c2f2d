#pragma once

// Finite-dimensional pure-state engine: composite states, reduced density
// matrices, Schmidt decompositions and the envariance (environment-assisted
// invariance) checks built on them.
//
// Basis convention: amplitudes are stored in mixed-radix order with factor 0
// as the most significant digit, so for qubits |q0 q1 ... q_{n-1}> maps to
// index q0·2^{n-1} + ... + q_{n-1}. |1> is "up".

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "envstat/pmf.hpp"

namespace envstat::envcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kNormTolerance = 1e-12;
/// Coefficients with a_k² at or below this are outside the Schmidt support.
inline constexpr double kSupportThreshold = 1e-14;
/// 4^12 amplitudes: twelve system qubits plus a twelve-qubit register.
inline constexpr std::size_t kDefaultMaxAmplitudes = std::size_t{1} << 24;

/// Normalized state vector over a tensor product of factors.
class PureState {
 public:
  /// Throws DimensionMismatch, NotNormalized or DimensionOverflow.
  PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> factor_dims,
            std::size_t max_amplitudes = kDefaultMaxAmplitudes);

  /// Rescales to unit norm before validating.
  static PureState normalized(std::vector<Complex> amplitudes, std::vector<std::size_t> factor_dims,
                              std::size_t max_amplitudes = kDefaultMaxAmplitudes);

  static PureState basis_state(std::vector<std::size_t> digits, std::vector<std::size_t> factor_dims);

  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
  const std::vector<std::size_t>& factor_dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::size_t num_factors() const noexcept { return dims_.size(); }
  double norm_squared() const;

 private:
  std::vector<Complex> amps_;
  std::vector<std::size_t> dims_;
};

/// |<a|b>|²; compares states modulo global phase.
double fidelity(const PureState& a, const PureState& b);

/// Split of the tensor factors into system and environment index sets.
class Bipartition {
 public:
  /// Environment is the complement of `system_factors` in 0..num_factors-1.
  /// Throws InvalidBipartition when a side would be empty or an index is
  /// out of range or repeated.
  Bipartition(std::vector<std::size_t> system_factors, std::size_t num_factors);

  /// System = the first `num_system` factors.
  static Bipartition leading(std::size_t num_system, std::size_t num_factors);

  const std::vector<std::size_t>& system() const noexcept { return system_; }
  const std::vector<std::size_t>& environment() const noexcept { return environment_; }
  std::size_t num_factors() const noexcept { return system_.size() + environment_.size(); }

  std::size_t system_dim(const std::vector<std::size_t>& dims) const;
  std::size_t environment_dim(const std::vector<std::size_t>& dims) const;

 private:
  std::vector<std::size_t> system_;
  std::vector<std::size_t> environment_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho);
  const Matrix& matrix() const noexcept { return rho_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  Matrix rho_;
};

class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-10;
  explicit UnitaryMatrix(Matrix u);
  static UnitaryMatrix identity(std::size_t dim);
  const Matrix& matrix() const noexcept { return u_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(u_.rows()); }
  UnitaryMatrix adjoint() const;

 private:
  Matrix u_;
};

struct SchmidtDecomposition {
  /// Descending, non-negative; only the support (a_k² > kSupportThreshold).
  std::vector<double> coefficients;
  /// Columns |S_k>, one per coefficient.
  Matrix system_basis;
  /// Columns |E_k>, one per coefficient.
  Matrix environment_basis;

  std::size_t rank() const noexcept { return coefficients.size(); }
};

/// Amplitudes regrouped as a (system_dim × environment_dim) matrix.
Matrix amplitude_matrix(const PureState& state, const Bipartition& cut);

/// Inverse of amplitude_matrix.
PureState from_amplitude_matrix(const Matrix& a, const std::vector<std::size_t>& factor_dims,
                                const Bipartition& cut);

PureState make_bell();

/// Σ_s |s>_S ⊗ |s>_E / √2^N on N system qubits followed by an N-qubit
/// environment register that records the system string.
PureState make_equal_weight_state(std::size_t num_qubits,
                                  std::size_t max_amplitudes = kDefaultMaxAmplitudes);

/// Reduced state of the system side: Tr_E |ψ><ψ|.
DensityMatrix partial_trace(const PureState& state, const Bipartition& cut);

SchmidtDecomposition schmidt(const PureState& state, const Bipartition& cut);

/// Σ_k a_k |S_k> ⊗ |E_k> written back in the state's factor ordering.
PureState reconstruct(const SchmidtDecomposition& decomposition,
                      const std::vector<std::size_t>& factor_dims, const Bipartition& cut);

/// True iff all support coefficients agree within `tol`. Rank-1 states are
/// reported envariant (Ω = 1).
bool is_maximally_envariant(const PureState& state, const Bipartition& cut, double tol);

enum class Side { System, Environment };

/// (u ⊗ I) or (I ⊗ u) applied on the chosen side of `cut`.
PureState apply_local(const PureState& state, const UnitaryMatrix& u, Side side, const Bipartition& cut);

/// Environment unitary undoing `u_system` on a maximally envariant state.
///
/// With W the restriction of u_system to the Schmidt support (in the |S_k>
/// basis), the compensator acts as conj(W) in the |E_k> basis and as the
/// identity off the support. Throws NotEnvariant when support coefficients
/// differ by more than `tol`, SupportViolation when u_system leaks the
/// support.
UnitaryMatrix construct_compensator(const PureState& state, const Bipartition& cut,
                                    const UnitaryMatrix& u_system, double tol = 1e-10);

/// −Σ λ ln λ over eigenvalues above kSupportThreshold, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// <k|ρ|k> for each basis column; throws NonOrthonormalBasis.
Pmf born_probabilities(const DensityMatrix& rho, const Matrix& basis);

/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
UnitaryMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng);

/// Random unitary on the system side that maps the Schmidt support of
/// `state` onto itself: Haar on the support, Haar on its complement.
UnitaryMatrix random_support_preserving_unitary(const PureState& state, const Bipartition& cut,
                                                std::mt19937_64& rng);

/// Haar-random normalized state with the given factor dimensions.
PureState random_state(const std::vector<std::size_t>& factor_dims, std::mt19937_64& rng);

/// Permutation unitary exchanging basis states i and j.
UnitaryMatrix transposition(std::size_t dim, std::size_t i, std::size_t j);

}  // namespace envstat::envcore
