#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "envstat/errors.hpp"
#include "envstat/logmath.hpp"
#include "envstat/pmf.hpp"

using namespace envstat;

TEST(LogMath, FactorialMatchesSmallValues) {
  EXPECT_DOUBLE_EQ(log_factorial(0), 0.0);
  EXPECT_DOUBLE_EQ(log_factorial(1), 0.0);
  EXPECT_NEAR(log_factorial(5), std::log(120.0), 1e-13);
  EXPECT_NEAR(log_factorial(20), std::log(2432902008176640000.0), 1e-12);
}

TEST(LogMath, FactorialBeyondDoubleRange) {
  // ln(1000!) = 5912.128178488163...
  EXPECT_NEAR(log_factorial(1000), 5912.128178488163, 1e-9);
  EXPECT_TRUE(std::isfinite(log_factorial(1e25)));
}

TEST(LogMath, BinomialAndOutOfRange) {
  EXPECT_NEAR(std::exp(log_binomial(10, 3)), 120.0, 1e-10);
  EXPECT_NEAR(std::exp(log_binomial(52, 5)), 2598960.0, 1e-6);
  EXPECT_EQ(log_binomial(5, 6), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(log_binomial(5, -1), -std::numeric_limits<double>::infinity());
}

TEST(LogMath, LogSumExpIsStable) {
  std::vector<double> xs{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(xs), 1000.0 + std::log(2.0), 1e-12);
  std::vector<double> empty;
  EXPECT_EQ(log_sum_exp(empty), -std::numeric_limits<double>::infinity());
  std::vector<double> with_inf{-std::numeric_limits<double>::infinity(), 0.0};
  EXPECT_NEAR(log_sum_exp(with_inf), 0.0, 1e-15);
}

TEST(LogMath, StirlingConvergesRelatively) {
  const double n = 1e10;
  EXPECT_LT(std::abs(stirling_log_factorial(n) - log_factorial(n)) / log_factorial(n), 1e-9);
}

TEST(Pmf, ValidatesNormalization) {
  EXPECT_NO_THROW(Pmf({0.25, 0.75}));
  try {
    Pmf({0.5, 0.6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormalized);
  }
  EXPECT_THROW(Pmf({-0.1, 1.1}), Error);
  EXPECT_THROW(Pmf(std::vector<double>{}), Error);
}

TEST(Pmf, FromLogWeightsHandlesHugeOffsets) {
  std::vector<double> lw{1e5, 1e5 + std::log(3.0), -std::numeric_limits<double>::infinity()};
  const Pmf p = Pmf::from_log_weights(lw);
  // 1e5 + ln 3 carries an ulp of ~1.5e-11 in the exponent.
  EXPECT_NEAR(p[0], 0.25, 1e-10);
  EXPECT_NEAR(p[1], 0.75, 1e-10);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Pmf, MomentsAndDistances) {
  const Pmf p = Pmf::from_weights(std::vector<double>{1, 2, 1});
  EXPECT_NEAR(p.mean(), 1.0, 1e-15);
  EXPECT_NEAR(p.variance(), 0.5, 1e-15);
  const Pmf q = Pmf::point_mass(5, 1);
  EXPECT_NEAR(total_variation(p, q), 0.5, 1e-15);
  EXPECT_NEAR(sup_distance(p, q), 0.5, 1e-15);
  EXPECT_EQ(q.mass(10), 0.0);
}
