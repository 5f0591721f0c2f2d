#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "envstat/constants.hpp"
#include "envstat/errors.hpp"

using namespace envstat;

TEST(Constants, CodataValues) {
  const auto& c = PhysicalConstants::codata();
  EXPECT_EQ(c.k_B, 1.380649e-23);
  EXPECT_EQ(c.h, 6.62607015e-34);
  EXPECT_EQ(c.eV, 1.602176634e-19);
}

TEST(Constants, ParsesOverridesAndComments) {
  const auto c = PhysicalConstants::from_text("# test\n  k_B = 1.0  # unit\n\nm_e=2e-30\n");
  EXPECT_EQ(c.k_B, 1.0);
  EXPECT_EQ(c.m_e, 2e-30);
  EXPECT_EQ(c.h, PhysicalConstants::codata().h);
}

TEST(Constants, RejectsMalformedInput) {
  for (const char* text : {"k_B 1.0\n", "k_B = abc\n", "speed = 3e8\n", "k_B = 1.0x\n"}) {
    try {
      PhysicalConstants::from_text(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ConstantsFile);
    }
  }
  EXPECT_THROW(PhysicalConstants::load("/nonexistent/constants.txt"), Error);
}

TEST(Constants, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "envstat_constants_test.txt";
  {
    std::ofstream f(path);
    f << "hbar = 1.5e-34\n";
  }
  EXPECT_EQ(PhysicalConstants::load(path).hbar, 1.5e-34);
  std::filesystem::remove(path);
}
