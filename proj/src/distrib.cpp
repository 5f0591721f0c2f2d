#include "envstat/distrib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "envstat/errors.hpp"
#include "envstat/logmath.hpp"

namespace envstat::distrib {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must lie in [0, 1]");
}

// ln[p^n (1−p)^{N−n}] with 0·ln 0 = 0.
double log_bernoulli_product(std::int64_t N, std::int64_t n, double p) {
  const double up = n == 0 ? 0.0 : static_cast<double>(n) * std::log(p);
  const double down = n == N ? 0.0 : static_cast<double>(N - n) * std::log1p(-p);
  return up + down;
}

double poisson_log_mass(double lambda, std::int64_t n) {
  return static_cast<double>(n) * std::log(lambda) - lambda - log_factorial(static_cast<double>(n));
}

}  // namespace

AncillaEmbedding::AncillaEmbedding(std::int64_t m_, std::int64_t M_, std::int64_t N_) : m(m_), M(M_), N(N_) {
  if (!(0 < m && m < M)) throw Error(ErrorCode::InvalidArgument, "ancilla embedding needs 0 < m < M");
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "ancilla embedding needs N >= 1");
}

Pmf hamming_weight_distribution(const envcore::PureState& state, const std::vector<std::size_t>& system_qubits) {
  const auto& dims = state.factor_dims();
  std::vector<bool> counted(dims.size(), false);
  for (std::size_t q : system_qubits) {
    if (q >= dims.size()) throw Error(ErrorCode::InvalidArgument, "qubit index out of range");
    if (dims[q] != 2) throw Error(ErrorCode::NonQubitFactor, "factor " + std::to_string(q) + " is not a qubit");
    counted[q] = true;
  }
  std::vector<double> masses(system_qubits.size() + 1, 0.0);
  std::vector<std::size_t> digits(dims.size(), 0);
  std::size_t weight = 0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    masses[weight] += std::norm(state.amplitudes()[i]);
    for (std::size_t f = dims.size(); f-- > 0;) {
      if (counted[f] && digits[f] == 1) --weight;
      if (++digits[f] < dims[f]) {
        if (counted[f] && digits[f] == 1) ++weight;
        break;
      }
      digits[f] = 0;
    }
  }
  return Pmf::from_weights(masses);
}

Pmf binomial_pmf(std::int64_t N, double p) {
  check_probability(p);
  if (N < 0 || N > kMaxBinomialN) throw Error(ErrorCode::InvalidArgument, "N outside [0, 10^7]");
  const auto size = static_cast<std::size_t>(N + 1);
  if (p == 0.0) return Pmf::point_mass(size, 0);
  if (p == 1.0) return Pmf::point_mass(size, size - 1);
  std::vector<double> logw(size);
  const double dn = static_cast<double>(N);
  for (std::int64_t n = 0; n <= N; ++n) {
    logw[static_cast<std::size_t>(n)] = log_binomial(dn, static_cast<double>(n)) + log_bernoulli_product(N, n, p);
  }
  return Pmf::from_log_weights(logw);
}

double ancilla_fine_count(const AncillaEmbedding& emb, std::int64_t n) {
  if (n < 0 || n > emb.N) throw Error(ErrorCode::InvalidArgument, "n outside [0, N]");
  return log_binomial(static_cast<double>(emb.N), static_cast<double>(n)) +
         static_cast<double>(n) * std::log(static_cast<double>(emb.m)) +
         static_cast<double>(emb.N - n) * std::log(static_cast<double>(emb.M - emb.m));
}

envcore::PureState make_product_state(std::size_t N, double p) {
  check_probability(p);
  if (N == 0) throw Error(ErrorCode::InvalidArgument, "need at least one qubit");
  if (N >= 25) throw Error(ErrorCode::DimensionOverflow, "product state limited to 24 qubits");
  const double up = std::sqrt(p);
  const double down = std::sqrt(1.0 - p);
  std::vector<envcore::Complex> amps{1.0};
  for (std::size_t q = 0; q < N; ++q) {
    std::vector<envcore::Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * down;
      next[2 * i + 1] = amps[i] * up;
    }
    amps = std::move(next);
  }
  return envcore::PureState::normalized(std::move(amps), std::vector<std::size_t>(N, 2));
}

envcore::PureState make_ancilla_state(const AncillaEmbedding& emb) {
  const double fine = std::pow(static_cast<double>(emb.M), static_cast<double>(emb.N));
  const double total = std::pow(2.0 * static_cast<double>(emb.M), static_cast<double>(emb.N));
  if (fine > std::ldexp(1.0, 20) || total > static_cast<double>(envcore::kDefaultMaxAmplitudes)) {
    throw Error(ErrorCode::DimensionOverflow, "ancilla state too large to materialize");
  }
  const auto M = static_cast<std::size_t>(emb.M);
  const auto m = static_cast<std::size_t>(emb.m);
  // Single subsystem block: (qubit, ancilla) index = s·M + j.
  std::vector<envcore::Complex> block(2 * M, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::size_t j = 0; j < M; ++j) block[(j < m ? 1 : 0) * M + j] = amp;

  std::vector<envcore::Complex> amps{1.0};
  std::vector<std::size_t> dims;
  for (std::int64_t k = 0; k < emb.N; ++k) {
    std::vector<envcore::Complex> next(amps.size() * block.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      for (std::size_t b = 0; b < block.size(); ++b) next[i * block.size() + b] = amps[i] * block[b];
    }
    amps = std::move(next);
    dims.push_back(2);
    dims.push_back(M);
  }
  return envcore::PureState::normalized(std::move(amps), std::move(dims));
}

std::vector<double> dicke_amplitudes(std::int64_t N, double p) {
  check_probability(p);
  if (N < 1 || N > kMaxDickeN) throw Error(ErrorCode::InvalidArgument, "N outside [1, 10^6]");
  const auto size = static_cast<std::size_t>(N + 1);
  std::vector<double> log_amp(size);
  for (std::int64_t n = 0; n <= N; ++n) {
    double la = kNegInf;
    if (!((p == 0.0 && n > 0) || (p == 1.0 && n < N))) {
      la = 0.5 * (log_binomial(static_cast<double>(N), static_cast<double>(n)) + log_bernoulli_product(N, n, p));
    }
    log_amp[static_cast<std::size_t>(n)] = la;
  }
  const double peak = *std::max_element(log_amp.begin(), log_amp.end());
  std::vector<double> amp(size);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    amp[k] = std::exp(log_amp[k] - peak);
    norm2 += amp[k] * amp[k];
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (double& a : amp) a *= scale;
  return amp;
}

envcore::PureState make_dicke_state(std::size_t N, std::size_t n) {
  if (N == 0 || N >= 25) throw Error(ErrorCode::InvalidArgument, "Dicke state limited to 1..24 qubits");
  if (n > N) throw Error(ErrorCode::InvalidArgument, "weight exceeds qubit count");
  const std::size_t dim = std::size_t{1} << N;
  std::vector<envcore::Complex> amps(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (static_cast<std::size_t>(__builtin_popcountll(i)) == n) amps[i] = 1.0;
  }
  return envcore::PureState::normalized(std::move(amps), std::vector<std::size_t>(N, 2));
}

std::int64_t poisson_support_end(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const auto mode = static_cast<std::int64_t>(std::floor(lambda));
  const double peak = poisson_log_mass(lambda, mode);
  std::int64_t n = mode;
  while (peak - poisson_log_mass(lambda, n) < 40.0) ++n;
  return n;
}

Pmf poisson_pmf(double lambda, std::int64_t n_max) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative");
  // Tail beyond n_max, summed term by term until it stops mattering.
  double tail = 0.0;
  for (std::int64_t n = n_max + 1;; ++n) {
    const double term = std::exp(poisson_log_mass(lambda, n));
    tail += term;
    if (tail > 1e-15) {
      throw Error(ErrorCode::TailTooHeavy, "Poisson tail beyond n_max=" + std::to_string(n_max) + " exceeds 1e-15");
    }
    if (static_cast<double>(n) > lambda && term < 1e-30) break;
  }
  std::vector<double> masses(static_cast<std::size_t>(n_max + 1));
  for (std::int64_t n = 0; n <= n_max; ++n) masses[static_cast<std::size_t>(n)] = std::exp(poisson_log_mass(lambda, n));
  return Pmf(std::move(masses));
}

Pmf poisson_pmf(double lambda) { return poisson_pmf(lambda, poisson_support_end(lambda)); }

double poisson_limit_error(std::int64_t N, double lambda) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  if (!(lambda >= 0.0) || !(lambda / static_cast<double>(N) < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= lambda/N < 1");
  }
  if (lambda == 0.0) return 0.0;
  return total_variation(binomial_pmf(N, lambda / static_cast<double>(N)), poisson_pmf(lambda));
}

std::function<double(double)> gaussian_approx(std::int64_t N, double p) {
  check_probability(p);
  const double mean = static_cast<double>(N) * p;
  const double var = mean * (1.0 - p);
  if (!(var >= 1.0)) throw Error(ErrorCode::VarianceTooSmall, "Np(1-p) must be at least 1");
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * var);
  return [mean, var, norm](double n) {
    const double d = n - mean;
    return norm * std::exp(-d * d / (2.0 * var));
  };
}

double gaussian_sup_error(std::int64_t N, double p) {
  const auto density = gaussian_approx(N, p);
  const Pmf binom = binomial_pmf(N, p);
  double worst = 0.0;
  for (std::size_t n = 0; n < binom.size(); ++n) {
    worst = std::max(worst, std::abs(binom[n] - density(static_cast<double>(n))));
  }
  return worst;
}

}  // namespace envstat::distrib
