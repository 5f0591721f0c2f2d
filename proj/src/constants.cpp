#include "envstat/constants.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "envstat/errors.hpp"

namespace envstat {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

const PhysicalConstants& PhysicalConstants::codata() {
  static const PhysicalConstants values{
      1.380649e-23,       // k_B
      6.62607015e-34,     // h
      1.054571817e-34,    // hbar
      9.1093837015e-31,   // m_e
      1.67262192369e-27,  // m_p
      1.602176634e-19,    // eV
  };
  return values;
}

PhysicalConstants PhysicalConstants::from_text(const std::string& text) {
  PhysicalConstants c = codata();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConstantsFile, "line " + std::to_string(line_no) + ": expected name = value");
    }
    const std::string name = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size() || !(value > 0.0)) {
      throw Error(ErrorCode::ConstantsFile, "line " + std::to_string(line_no) + ": bad value '" + raw + "'");
    }
    if (name == "k_B") c.k_B = value;
    else if (name == "h") c.h = value;
    else if (name == "hbar") c.hbar = value;
    else if (name == "m_e") c.m_e = value;
    else if (name == "m_p") c.m_p = value;
    else if (name == "eV") c.eV = value;
    else throw Error(ErrorCode::ConstantsFile, "line " + std::to_string(line_no) + ": unknown constant '" + name + "'");
  }
  return c;
}

PhysicalConstants PhysicalConstants::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConstantsFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

}  // namespace envstat
