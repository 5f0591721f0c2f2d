#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "envstat/distrib.hpp"
#include "envstat/errors.hpp"

using namespace envstat;
using namespace envstat::distrib;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected envstat::Error";
  return ErrorCode::InvalidArgument;
}

// Coefficients of (m·x + (M − m))^N by repeated polynomial multiplication.
std::vector<double> fine_counts_by_expansion(std::int64_t m, std::int64_t M, std::int64_t N) {
  std::vector<double> c{1.0};
  for (std::int64_t i = 0; i < N; ++i) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k] * static_cast<double>(M - m);
      next[k + 1] += c[k] * static_cast<double>(m);
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

TEST(Binomial, ClosedFormValues) {
  const Pmf p = binomial_pmf(4, 0.5);
  const double expect[] = {1 / 16.0, 4 / 16.0, 6 / 16.0, 4 / 16.0, 1 / 16.0};
  for (std::size_t n = 0; n < 5; ++n) EXPECT_NEAR(p[n], expect[n], 1e-15);
  EXPECT_EQ(binomial_pmf(5, 0.0)[0], 1.0);
  EXPECT_EQ(binomial_pmf(5, 1.0)[5], 1.0);
  EXPECT_THROW(binomial_pmf(5, 1.5), Error);
}

TEST(Binomial, LargeNStaysNormalized) {
  const Pmf p = binomial_pmf(1'000'000, 0.3);
  EXPECT_NEAR(p.total(), 1.0, 1e-12);
  EXPECT_NEAR(p.mean(), 300000.0, 1e-4);
}

TEST(Counting, EqualWeightStateGivesBinomialHalf) {
  for (std::size_t N = 1; N <= 8; ++N) {
    const auto s = envcore::make_equal_weight_state(N);
    std::vector<std::size_t> sys(N);
    for (std::size_t i = 0; i < N; ++i) sys[i] = i;
    const Pmf h = hamming_weight_distribution(s, sys);
    EXPECT_LT(sup_distance(h, binomial_pmf(static_cast<std::int64_t>(N), 0.5)), 1e-14);
  }
}

TEST(Counting, NonQubitFactorRejected) {
  const auto s = envcore::PureState::basis_state({0, 2}, {2, 3});
  EXPECT_EQ(code_of([&] { hamming_weight_distribution(s, {1}); }), ErrorCode::NonQubitFactor);
}

TEST(Ancilla, FineCountsMatchPolynomialExpansion) {
  for (std::int64_t M = 2; M <= 6; ++M) {
    for (std::int64_t m = 1; m < M; ++m) {
      const std::int64_t N = 12;
      const AncillaEmbedding emb(m, M, N);
      const auto c = fine_counts_by_expansion(m, M, N);
      for (std::int64_t n = 0; n <= N; ++n) {
        EXPECT_NEAR(std::exp(ancilla_fine_count(emb, n)) / c[static_cast<std::size_t>(n)], 1.0, 1e-12);
      }
    }
  }
}

TEST(Ancilla, ExplicitStateCountsToBinomial) {
  const AncillaEmbedding emb(1, 3, 4);
  const auto s = make_ancilla_state(emb);
  EXPECT_EQ(s.num_factors(), 8u);
  const Pmf h = hamming_weight_distribution(s, {0, 2, 4, 6});
  EXPECT_LT(sup_distance(h, binomial_pmf(4, 1.0 / 3.0)), 1e-13);
  EXPECT_EQ(code_of([] { make_ancilla_state(AncillaEmbedding(1, 6, 12)); }), ErrorCode::DimensionOverflow);
  EXPECT_THROW(AncillaEmbedding(3, 3, 2), Error);
}

TEST(Dicke, AmplitudeSquaresAreBinomial) {
  const auto a = dicke_amplitudes(10, 0.3);
  const Pmf b = binomial_pmf(10, 0.3);
  for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(a[n] * a[n], b[n], 1e-15);
}

TEST(Dicke, StateHasFixedWeight) {
  const auto d = make_dicke_state(6, 2);
  const Pmf h = hamming_weight_distribution(d, {0, 1, 2, 3, 4, 5});
  EXPECT_NEAR(h[2], 1.0, 1e-14);
  // C(6,2) = 15 equal amplitudes.
  EXPECT_NEAR(std::abs(d.amplitudes()[0b000011]), 1.0 / std::sqrt(15.0), 1e-15);
}

TEST(Poisson, PmfAndTail) {
  const Pmf p = poisson_pmf(2.0);
  EXPECT_NEAR(p[0], std::exp(-2.0), 1e-15);
  EXPECT_NEAR(p[3], std::exp(-2.0) * 8.0 / 6.0, 1e-15);
  EXPECT_EQ(code_of([] { poisson_pmf(5.0, 5); }), ErrorCode::TailTooHeavy);
}

TEST(Poisson, LimitErrorOracle) {
  // Reference values from an independent high-precision evaluation.
  EXPECT_NEAR(poisson_limit_error(100, 1.0), 2.78e-3, 0.01e-3);
  EXPECT_NEAR(poisson_limit_error(1000, 2.0), 4.52e-4, 0.01e-4);
  EXPECT_NEAR(poisson_limit_error(10000, 5.0), 1.22e-4, 0.01e-4);
  EXPECT_NEAR(poisson_limit_error(1'000'000, 0.5), 1.14e-7, 0.01e-7);
  EXPECT_THROW(poisson_limit_error(10, 10.0), Error);
}

TEST(Gaussian, SupErrorOracle) {
  EXPECT_NEAR(gaussian_sup_error(100, 0.5), 1.99e-4, 0.01e-4);
  EXPECT_NEAR(gaussian_sup_error(1000, 0.5), 6.31e-6, 0.01e-6);
  EXPECT_NEAR(gaussian_sup_error(10000, 0.5), 1.99e-7, 0.01e-7);
  EXPECT_NEAR(gaussian_sup_error(10000, 0.05), 1.76e-4, 0.01e-4);
  EXPECT_EQ(code_of([] { gaussian_approx(3, 0.1); }), ErrorCode::VarianceTooSmall);
}
