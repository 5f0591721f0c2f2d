#include "envstat/envcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "envstat/errors.hpp"

namespace envstat::envcore {

namespace {

std::size_t checked_product(const std::vector<std::size_t>& dims, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorCode::DimensionMismatch, "factor dimensions must be positive");
    if (total > cap / d) {
      throw Error(ErrorCode::DimensionOverflow,
                  "composite dimension exceeds cap of " + std::to_string(cap) + " amplitudes");
    }
    total *= d;
  }
  return total;
}

// Row (system) and column (environment) index of every full basis index.
struct IndexMap {
  std::vector<std::size_t> row;
  std::vector<std::size_t> col;
  std::size_t rows = 1;
  std::size_t cols = 1;
};

IndexMap index_map(const std::vector<std::size_t>& dims, const Bipartition& cut) {
  if (cut.num_factors() != dims.size()) {
    throw Error(ErrorCode::InvalidBipartition, "bipartition covers " + std::to_string(cut.num_factors()) +
                                                   " factors, state has " + std::to_string(dims.size()));
  }
  const std::size_t n = dims.size();
  // Stride of each factor inside its own side's mixed-radix index.
  std::vector<std::size_t> side_stride(n, 0);
  std::vector<bool> on_system(n, false);
  IndexMap map;
  for (auto it = cut.system().rbegin(); it != cut.system().rend(); ++it) {
    side_stride[*it] = map.rows;
    on_system[*it] = true;
    map.rows *= dims[*it];
  }
  for (auto it = cut.environment().rbegin(); it != cut.environment().rend(); ++it) {
    side_stride[*it] = map.cols;
    map.cols *= dims[*it];
  }
  const std::size_t total = map.rows * map.cols;
  map.row.assign(total, 0);
  map.col.assign(total, 0);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t r = 0;
    std::size_t c = 0;
    for (std::size_t f = 0; f < n; ++f) {
      if (on_system[f]) {
        r += digits[f] * side_stride[f];
      } else {
        c += digits[f] * side_stride[f];
      }
    }
    map.row[i] = r;
    map.col[i] = c;
    // increment mixed-radix counter, last factor fastest
    for (std::size_t f = n; f-- > 0;) {
      if (++digits[f] < dims[f]) break;
      digits[f] = 0;
    }
  }
  return map;
}

DensityMatrix trusted_density(Matrix rho) {
  // Hermitize away rounding before validation.
  Matrix sym = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(sym));
}

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> factor_dims,
                     std::size_t max_amplitudes)
    : amps_(std::move(amplitudes)), dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw Error(ErrorCode::DimensionMismatch, "state needs at least one factor");
  const std::size_t total = checked_product(dims_, max_amplitudes);
  if (total != amps_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "product of factor dims " + std::to_string(total) +
                                                  " != amplitude count " + std::to_string(amps_.size()));
  }
  const double n2 = norm_squared();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::NotNormalized, "state norm² = " + std::to_string(n2));
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes, std::vector<std::size_t> factor_dims,
                                std::size_t max_amplitudes) {
  double n2 = 0.0;
  for (const Complex& a : amplitudes) n2 += std::norm(a);
  if (!(n2 > 0.0)) throw Error(ErrorCode::NotNormalized, "zero vector cannot be normalized");
  const double scale = 1.0 / std::sqrt(n2);
  for (Complex& a : amplitudes) a *= scale;
  return PureState(std::move(amplitudes), std::move(factor_dims), max_amplitudes);
}

PureState PureState::basis_state(std::vector<std::size_t> digits, std::vector<std::size_t> factor_dims) {
  if (digits.size() != factor_dims.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one digit per factor required");
  }
  std::size_t index = 0;
  std::size_t total = 1;
  for (std::size_t f = 0; f < digits.size(); ++f) {
    if (digits[f] >= factor_dims[f]) throw Error(ErrorCode::DimensionMismatch, "digit out of range");
    index = index * factor_dims[f] + digits[f];
    total *= factor_dims[f];
  }
  std::vector<Complex> amps(total, Complex{0.0, 0.0});
  amps[index] = 1.0;
  return PureState(std::move(amps), std::move(factor_dims));
}

double PureState::norm_squared() const {
  double n2 = 0.0;
  for (const Complex& a : amps_) n2 += std::norm(a);
  return n2;
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.factor_dims() != b.factor_dims()) {
    throw Error(ErrorCode::DimensionMismatch, "fidelity between states of different shape");
  }
  Complex overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return std::norm(overlap);
}

// -------------------------------------------------------------- Bipartition

Bipartition::Bipartition(std::vector<std::size_t> system_factors, std::size_t num_factors)
    : system_(std::move(system_factors)) {
  std::sort(system_.begin(), system_.end());
  if (system_.empty()) throw Error(ErrorCode::InvalidBipartition, "system side is empty");
  if (std::adjacent_find(system_.begin(), system_.end()) != system_.end()) {
    throw Error(ErrorCode::InvalidBipartition, "repeated factor index");
  }
  if (system_.back() >= num_factors) throw Error(ErrorCode::InvalidBipartition, "factor index out of range");
  for (std::size_t f = 0; f < num_factors; ++f) {
    if (!std::binary_search(system_.begin(), system_.end(), f)) environment_.push_back(f);
  }
  if (environment_.empty()) throw Error(ErrorCode::InvalidBipartition, "environment side is empty");
}

Bipartition Bipartition::leading(std::size_t num_system, std::size_t num_factors) {
  std::vector<std::size_t> sys(num_system);
  std::iota(sys.begin(), sys.end(), std::size_t{0});
  return Bipartition(std::move(sys), num_factors);
}

std::size_t Bipartition::system_dim(const std::vector<std::size_t>& dims) const {
  std::size_t d = 1;
  for (std::size_t f : system_) d *= dims.at(f);
  return d;
}

std::size_t Bipartition::environment_dim(const std::vector<std::size_t>& dims) const {
  std::size_t d = 1;
  for (std::size_t f : environment_) d *= dims.at(f);
  return d;
}

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be square and non-empty");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex{1.0, 0.0}) > 1e-12) {
    throw Error(ErrorCode::NotNormalized, "density matrix trace != 1");
  }
  if (eigenvalues().minCoeff() < -1e-12) {
    throw Error(ErrorCode::InvalidArgument, "density matrix has a negative eigenvalue");
  }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// ------------------------------------------------------------ UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Matrix u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "unitary must be square and non-empty");
  }
  const Matrix defect = u_ * u_.adjoint() - Matrix::Identity(u_.rows(), u_.cols());
  if (defect.cwiseAbs().maxCoeff() > kTolerance) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not unitary");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(Matrix::Identity(d, d));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(u_.adjoint()); }

// ------------------------------------------------------------- operations

Matrix amplitude_matrix(const PureState& state, const Bipartition& cut) {
  const IndexMap map = index_map(state.factor_dims(), cut);
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(map.rows), static_cast<Eigen::Index>(map.cols));
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    a(static_cast<Eigen::Index>(map.row[i]), static_cast<Eigen::Index>(map.col[i])) = state.amplitudes()[i];
  }
  return a;
}

PureState from_amplitude_matrix(const Matrix& a, const std::vector<std::size_t>& factor_dims,
                                const Bipartition& cut) {
  const IndexMap map = index_map(factor_dims, cut);
  if (static_cast<std::size_t>(a.rows()) != map.rows || static_cast<std::size_t>(a.cols()) != map.cols) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude matrix shape does not match bipartition");
  }
  std::vector<Complex> amps(map.row.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = a(static_cast<Eigen::Index>(map.row[i]), static_cast<Eigen::Index>(map.col[i]));
  }
  return PureState::normalized(std::move(amps), factor_dims);
}

PureState make_bell() {
  const double h = 1.0 / std::sqrt(2.0);
  return PureState({h, 0.0, 0.0, h}, {2, 2});
}

PureState make_equal_weight_state(std::size_t num_qubits, std::size_t max_amplitudes) {
  if (num_qubits == 0) throw Error(ErrorCode::InvalidArgument, "need at least one qubit");
  // 4^N must fit both the cap and the index type.
  if (2 * num_qubits >= 8 * sizeof(std::size_t) - 1 || (std::size_t{1} << (2 * num_qubits)) > max_amplitudes) {
    throw Error(ErrorCode::DimensionOverflow,
                std::to_string(num_qubits) + " qubits exceed the amplitude cap of " + std::to_string(max_amplitudes));
  }
  const std::size_t omega = std::size_t{1} << num_qubits;
  const double amp = 1.0 / std::sqrt(static_cast<double>(omega));
  std::vector<Complex> amps(omega * omega, Complex{0.0, 0.0});
  for (std::size_t s = 0; s < omega; ++s) amps[s * omega + s] = amp;
  return PureState(std::move(amps), std::vector<std::size_t>(2 * num_qubits, 2), max_amplitudes);
}

DensityMatrix partial_trace(const PureState& state, const Bipartition& cut) {
  const Matrix a = amplitude_matrix(state, cut);
  return trusted_density(a * a.adjoint());
}

SchmidtDecomposition schmidt(const PureState& state, const Bipartition& cut) {
  const Matrix a = amplitude_matrix(state, cut);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) * s(rank) > kSupportThreshold) ++rank;

  SchmidtDecomposition out;
  out.coefficients.assign(s.data(), s.data() + rank);
  out.system_basis = svd.matrixU().leftCols(rank);
  // A = U Σ V†, so the environment partner of column k is conj(V_k).
  out.environment_basis = svd.matrixV().leftCols(rank).conjugate();
  return out;
}

PureState reconstruct(const SchmidtDecomposition& d, const std::vector<std::size_t>& factor_dims,
                      const Bipartition& cut) {
  Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(d.coefficients.data(),
                                                             static_cast<Eigen::Index>(d.coefficients.size()));
  const Matrix a = d.system_basis * coeffs.cast<Complex>().asDiagonal() * d.environment_basis.transpose();
  return from_amplitude_matrix(a, factor_dims, cut);
}

bool is_maximally_envariant(const PureState& state, const Bipartition& cut, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const SchmidtDecomposition d = schmidt(state, cut);
  if (d.rank() <= 1) return true;
  return d.coefficients.front() - d.coefficients.back() <= tol;
}

PureState apply_local(const PureState& state, const UnitaryMatrix& u, Side side, const Bipartition& cut) {
  const Matrix a = amplitude_matrix(state, cut);
  const auto expected = static_cast<std::size_t>(side == Side::System ? a.rows() : a.cols());
  if (u.dimension() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "unitary of dimension " + std::to_string(u.dimension()) +
                                                  " on a side of dimension " + std::to_string(expected));
  }
  const Matrix out = side == Side::System ? Matrix(u.matrix() * a) : Matrix(a * u.matrix().transpose());
  return from_amplitude_matrix(out, state.factor_dims(), cut);
}

UnitaryMatrix construct_compensator(const PureState& state, const Bipartition& cut, const UnitaryMatrix& u_system,
                                    double tol) {
  const SchmidtDecomposition d = schmidt(state, cut);
  if (u_system.dimension() != static_cast<std::size_t>(d.system_basis.rows())) {
    throw Error(ErrorCode::DimensionMismatch, "system unitary does not match system dimension");
  }
  if (d.coefficients.front() - d.coefficients.back() > tol) {
    throw Error(ErrorCode::NotEnvariant, "Schmidt coefficients on the support differ by " +
                                             std::to_string(d.coefficients.front() - d.coefficients.back()));
  }
  const Matrix& s = d.system_basis;
  const Matrix w = s.adjoint() * u_system.matrix() * s;
  const double leak = (u_system.matrix() * s - s * w).cwiseAbs().maxCoeff();
  if (leak > 1e-9) {
    throw Error(ErrorCode::SupportViolation, "system unitary maps the Schmidt support outside itself");
  }
  const Matrix& e = d.environment_basis;
  const auto de = e.rows();
  const Matrix u_env = e * w.conjugate() * e.adjoint() + (Matrix::Identity(de, de) - e * e.adjoint());
  return UnitaryMatrix(u_env);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd lambda = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > kSupportThreshold) s -= lambda(i) * std::log(lambda(i));
  }
  return std::max(s, 0.0);
}

Pmf born_probabilities(const DensityMatrix& rho, const Matrix& basis) {
  if (basis.rows() != static_cast<Eigen::Index>(rho.dimension()) || basis.cols() != basis.rows()) {
    throw Error(ErrorCode::NonOrthonormalBasis, "basis must be square and match the density matrix");
  }
  const auto d = basis.cols();
  if ((basis.adjoint() * basis - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::NonOrthonormalBasis, "basis vectors are not orthonormal");
  }
  std::vector<double> p(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    const double v = (basis.col(k).adjoint() * rho.matrix() * basis.col(k))(0, 0).real();
    p[static_cast<std::size_t>(k)] = std::max(v, 0.0);
  }
  return Pmf::from_weights(p);
}

UnitaryMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return UnitaryMatrix(q);
}

UnitaryMatrix random_support_preserving_unitary(const PureState& state, const Bipartition& cut,
                                                std::mt19937_64& rng) {
  const Matrix a = amplitude_matrix(state, cut);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) * s(rank) > kSupportThreshold) ++rank;
  const Matrix& full = svd.matrixU();
  const Eigen::Index ds = full.cols();
  const Matrix support = full.leftCols(rank);
  Matrix u = support * haar_unitary(static_cast<std::size_t>(rank), rng).matrix() * support.adjoint();
  if (rank < ds) {
    const Matrix rest = full.rightCols(ds - rank);
    u += rest * haar_unitary(static_cast<std::size_t>(ds - rank), rng).matrix() * rest.adjoint();
  }
  return UnitaryMatrix(u);
}

PureState random_state(const std::vector<std::size_t>& factor_dims, std::mt19937_64& rng) {
  std::size_t total = 1;
  for (std::size_t d : factor_dims) total *= d;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(total);
  for (Complex& a : amps) a = Complex(gauss(rng), gauss(rng));
  return PureState::normalized(std::move(amps), factor_dims);
}

UnitaryMatrix transposition(std::size_t dim, std::size_t i, std::size_t j) {
  if (i >= dim || j >= dim) throw Error(ErrorCode::DimensionMismatch, "transposition index out of range");
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix p = Matrix::Identity(n, n);
  p.row(static_cast<Eigen::Index>(i)).swap(p.row(static_cast<Eigen::Index>(j)));
  return UnitaryMatrix(p);
}

}  // namespace envstat::envcore
