#pragma once

#include <filesystem>
#include <string>

namespace envstat {

/// SI constants used by every dimensionful routine.
struct PhysicalConstants {
  double k_B;      // J/K
  double h;        // J s
  double hbar;     // J s
  double m_e;      // kg
  double m_p;      // kg
  double eV;       // J

  /// CODATA 2018 values.
  static const PhysicalConstants& codata();

  /// Parses `name = value` lines ('#' starts a comment). Keys: k_B, h,
  /// hbar, m_e, m_p, eV. Missing keys keep their CODATA value; unknown keys
  /// and unparseable values throw ConstantsFile.
  static PhysicalConstants from_text(const std::string& text);
  static PhysicalConstants load(const std::filesystem::path& path);
};

}  // namespace envstat
