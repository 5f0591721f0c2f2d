#include <cmath>

#include <gtest/gtest.h>

#include "envstat/constants.hpp"
#include "envstat/errors.hpp"
#include "envstat/thermo.hpp"

using namespace envstat;
using namespace envstat::thermo;

namespace {
const PhysicalConstants& C = PhysicalConstants::codata();
}

TEST(Thermo, ThermalWavelengthOracle) {
  EXPECT_NEAR(thermal_wavelength(4.65e-26, 300.0), 1.905e-11, 0.001e-11);
  EXPECT_NEAR(thermal_wavelength(1.443e-25, 1e-6), 1.8726e-7, 0.0002e-7);
  EXPECT_NEAR(thermal_wavelength(C.m_e, 1e4), 7.45e-10, 0.01e-10);
}

TEST(Thermo, DegeneracyParameterOfPresets) {
  EXPECT_NEAR(degeneracy_parameter(air_preset()), 1.73e-7, 0.01e-7);
  EXPECT_NEAR(degeneracy_parameter(rb87_cold_preset()), 0.302, 0.002);
  EXPECT_EQ(classify_regime(degeneracy_parameter(air_preset())), Regime::Classical);
  EXPECT_EQ(classify_regime(degeneracy_parameter(rb87_cold_preset())), Regime::Quantum);
  EXPECT_EQ(classify_regime(0.5, 100.0, 0.01), Regime::Classical);
  EXPECT_EQ(to_string(Regime::Quantum), "quantum-flagged");
}

TEST(Thermo, ClassicalMinusSackurTetrodeIsStirlingTerm) {
  // classical − ST = N k (ln N − 1); at N = 1 that is −k_B.
  GasState one{1.0, 1e-3, 300.0, 4.65e-26};
  EXPECT_NEAR(classical_entropy(one) - sackur_tetrode_entropy(one), -C.k_B, 1e-12 * C.k_B * 50);
  GasState many{1e6, 1e-3, 300.0, 4.65e-26};
  const double expect = 1e6 * C.k_B * (std::log(1e6) - 1.0);
  EXPECT_NEAR((classical_entropy(many) - sackur_tetrode_entropy(many)) / expect, 1.0, 1e-9);
}

TEST(Thermo, InternalDegeneracyAddsNkLnG) {
  GasState a = air_preset();
  GasState b = a;
  b.g = 3.0;
  EXPECT_NEAR(sackur_tetrode_entropy(b) - sackur_tetrode_entropy(a), a.N * C.k_B * std::log(3.0),
              1e-9 * a.N * C.k_B);
}

TEST(Thermo, EntanglementEntropy) {
  EXPECT_EQ(entanglement_entropy(1.0), 0.0);
  EXPECT_NEAR(entanglement_entropy(5.0) / C.k_B, std::log(120.0), 1e-13);
  const double N = 1e20;
  EXPECT_NEAR(entanglement_entropy_stirling(N) / entanglement_entropy(N), 1.0, 1e-18 * 1e3);
}

TEST(Thermo, MixingIdenticalAndDistinct) {
  const GasState g = air_preset();
  const double nk = g.N * C.k_B;
  EXPECT_NEAR(mixing_entropy(g, g, true, Counting::Classical) / (2 * nk * std::log(2.0)), 1.0, 1e-12);
  EXPECT_NEAR(mixing_entropy(g, g, true, Counting::Quantum), 0.0, 1e-9 * nk);
  GasState other = g;
  other.m *= 2.0;
  EXPECT_NEAR(mixing_entropy(g, other, false, Counting::Quantum) / (2 * nk * std::log(2.0)), 1.0, 1e-12);
}

TEST(Thermo, MixingValidation) {
  GasState a = air_preset();
  GasState b = a;
  b.T = 301.0;
  try {
    mixing_entropy(a, b, true, Counting::Quantum);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TemperatureMismatch);
  }
  b = a;
  b.m *= 2;
  EXPECT_THROW(mixing_entropy(a, b, true, Counting::Quantum), Error);
  GasState bad = a;
  bad.V = -1;
  EXPECT_THROW(sackur_tetrode_entropy(bad), Error);
}
