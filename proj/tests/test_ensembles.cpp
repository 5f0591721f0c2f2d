#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "envstat/ensembles.hpp"
#include "envstat/errors.hpp"
#include "envstat/logmath.hpp"

using namespace envstat;
using namespace envstat::ensembles;

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

}  // namespace

TEST(SpinBath, DegeneracyAndBeta) {
  const SpinBath bath(10, 1.0);
  EXPECT_NEAR(std::exp(bath.log_degeneracy(3)), 120.0, 1e-10);
  EXPECT_EQ(bath.log_degeneracy(11), -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(bath.beta_at(2), std::log(4.0), 1e-15);
}

TEST(SpinBath, CanonicalWeightsAreDegeneracyRatios) {
  const SpinBath bath(1000, 1.0);
  const std::vector<double> levels{0, 1, 2, 3};
  const Pmf p = canonical_from_counting(levels, bath, 200.0);
  // P(1)/P(0) = C(1000,199)/C(1000,200) = 200/801.
  EXPECT_NEAR(p[1] / p[0], 200.0 / 801.0, 1e-12);
  EXPECT_NEAR(fit_beta(p, levels), std::log(4.0), 0.02 * std::log(4.0));
}

TEST(SpinBath, RejectsBadLevels) {
  const SpinBath bath(10, 1.0);
  EXPECT_EQ(code_of([&] { canonical_from_counting({0.0, 0.5}, bath, 5.0); }), ErrorCode::IncommensurateLevel);
  EXPECT_EQ(code_of([&] { canonical_from_counting({0.0, 20.0}, bath, 5.0); }), ErrorCode::EnergyOutOfRange);
  EXPECT_EQ(code_of([] { fit_beta(Pmf::point_mass(2, 0), {0.0, 1.0}); }), ErrorCode::DegenerateFit);
}

TEST(ParticleBath, CountingMatchesEnumeration) {
  const ParticleBath bath(6, 1.0, 2);
  for (std::int64_t N = 0; N <= 12; ++N) {
    for (std::int64_t q = 0; q <= N; q += 2) {
      const double exact = bath.enumerate_degeneracy(q, N);
      const double logw = bath.log_degeneracy(q, N);
      if (exact == 0.0) {
        EXPECT_EQ(logw, -std::numeric_limits<double>::infinity());
      } else {
        EXPECT_NEAR(std::exp(logw) / exact, 1.0, 1e-12) << "N=" << N << " q=" << q;
      }
    }
  }
  EXPECT_EQ(code_of([] { ParticleBath(31, 1.0, 1).enumerate_degeneracy(1, 2); }),
            ErrorCode::InfeasibleEnumeration);
}

TEST(ParticleBath, GrandCanonicalRatioFromCounting) {
  const ParticleBath bath(30, 1.0, 3);
  const ThermoParams tp = bath_thermo_params(bath, 20.0, 45);
  EXPECT_NEAR(tp.beta, 0.2184, 1e-3);
  const std::vector<ModeSpec> modes{ModeSpec::fermion(1.0)};
  const Pmf p = grand_from_counting(modes, bath, 20.0, 45);
  const double predicted = std::exp(-tp.beta * (1.0 - tp.mu));
  EXPECT_NEAR(p[1] / p[0], 0.43869, 1e-4);
  EXPECT_LT(std::abs(p[1] / p[0] - predicted) / predicted, 0.05);
}

TEST(Modes, ConfigsAndCaps) {
  const std::vector<ModeSpec> modes{ModeSpec::fermion(1.0), ModeSpec::boson(2.0, 2)};
  const auto configs = enumerate_configs(modes);
  ASSERT_EQ(configs.size(), 6u);
  EXPECT_EQ(configs[1], (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(configs[3], (std::vector<std::int64_t>{1, 0}));
  const ThermoParams tp(1.0, 0.0);
  EXPECT_EQ(code_of([&] { grand_weight({2, 0}, modes, tp); }), ErrorCode::CapViolation);
  EXPECT_NEAR(grand_weight({1, 2}, modes, tp), std::exp(-5.0), 1e-16);
  EXPECT_NEAR(grand_amplitude({1, 2}, modes, tp), std::exp(-2.5), 1e-16);
  EXPECT_EQ(enumerate_configs({}).size(), 1u);
}

TEST(Modes, ClosedForms) {
  const ThermoParams tp(2.0, 0.5);
  const ModeSpec f = ModeSpec::fermion(0.5);
  EXPECT_EQ(mean_occupation(f, tp), 0.5);
  EXPECT_EQ(mode_partition(f, tp), 2.0);
  const ModeSpec b = ModeSpec::boson(1.0);
  EXPECT_NEAR(mean_occupation(b, tp), 1.0 / (std::exp(1.0) - 1.0), 1e-15);
  EXPECT_EQ(code_of([&] { mean_occupation(ModeSpec::boson(0.5), tp); }), ErrorCode::BosonicDivergence);
  EXPECT_EQ(code_of([&] { enumerate_mode(ModeSpec::boson(0.2), tp); }), ErrorCode::BosonicDivergence);
  EXPECT_THROW(ThermoParams(0.0, 0.0), Error);
}

TEST(Modes, EnumerationGrowsCutoffUntilTailIsSmall) {
  const ThermoParams tp(1.0, 0.0);
  const EnumeratedMode e = enumerate_mode(ModeSpec::boson(0.01, 4), tp);
  EXPECT_GT(e.cutoff, 4);
  EXPECT_LT(e.tail_mass, 1e-12);
  EXPECT_NEAR(e.occupation, 1.0 / std::expm1(0.01), 1e-10 * e.occupation);
}
