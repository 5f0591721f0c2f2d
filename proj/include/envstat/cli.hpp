#pragma once

// Command-line front end. Every subcommand builds one or more named tables
// and writes them as CSV (17 significant digits, '.' decimal point) or JSON
// (one array per column).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace envstat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Numeric view of a column; strings become NaN.
  std::vector<double> numeric_column(const std::string& column) const;
};

enum class Format { Csv, Json };

/// "%.17g" for doubles, "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double v);

void write_csv(std::ostream& out, const std::vector<Table>& tables);
void write_json(std::ostream& out, const std::vector<Table>& tables);

/// Parses `args` (args[0] is the program name), runs the subcommand and
/// writes to --out or `out`. Diagnostics go to `err`. Returns 0 on success,
/// 1 on numerical failure, 2 on bad arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace envstat::cli
