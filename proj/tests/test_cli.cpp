#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "envstat/cli.hpp"

using namespace envstat::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "envstat");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"nonsense"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"distributions", "--p", "1.5"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"distributions", "--p", "0.5", "--m", "1", "--M", "2"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--format", "xml", "regime"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--preset", "jupiter", "gibbs"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--constants", "/nonexistent", "regime"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"gibbs", "--T", "-5"}).code, kExitUsage);
}

TEST(Cli, CsvLayout) {
  const Outcome o = run_cli({"envariance", "--N", "1", "--trials", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# fidelity");
  std::getline(in, line);
  EXPECT_EQ(line, "trial,fidelity,infidelity");
  EXPECT_NE(o.out.find("\n\n# equiprobability\n"), std::string::npos);
}

TEST(Cli, JsonIsColumnar) {
  const Outcome o = run_cli({"--format", "json", "distributions", "--N", "20", "--lambda", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc["pmf"]["n"].size(), 21u);
  EXPECT_TRUE(doc.contains("poisson"));
  const auto& names = doc["metrics"]["metric"];
  EXPECT_NE(std::find(names.begin(), names.end(), "tv_poisson"), names.end());
}

TEST(Cli, FineCountColumnForAncillaBias) {
  const Outcome o = run_cli({"distributions", "--N", "6", "--m", "1", "--M", "3"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("n,binomial,fine_count,gaussian,abs_diff"), std::string::npos);
  // n = 0: (M − m)^N = 64 strings.
  EXPECT_NE(o.out.find("\n0,0.08779149519890"), std::string::npos);
  EXPECT_NE(o.out.find(",64,"), std::string::npos);
}

TEST(Cli, SameSeedSameBytes) {
  const auto a = run_cli({"--seed", "9", "envariance", "--N", "2", "--trials", "5"});
  const auto b = run_cli({"--seed", "9", "envariance", "--N", "2", "--trials", "5"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PmfColumnsSumToOne) {
  const Outcome o = run_cli({"--format", "json", "distributions", "--N", "300", "--p", "0.2", "--lambda", "4"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  for (const auto& [table, column] : {std::pair{"pmf", "binomial"}, {"poisson", "poisson"},
                                      {"poisson", "binomial_lambda_over_N"}}) {
    double sum = 0.0;
    for (double v : doc[table][column]) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-9) << table << "." << column;
  }
}

TEST(Cli, EnvarianceBounds) {
  EXPECT_EQ(run_cli({"envariance", "--N", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"envariance", "--N", "9"}).code, kExitUsage);
  const Outcome bell = run_cli({"envariance", "--N", "1", "--trials", "1"});
  EXPECT_NE(bell.out.find("\n0,1,1,0.5,0.5,0\n"), std::string::npos) << bell.out;
}

TEST(Cli, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "envstat_cli_test.csv";
  const Outcome o = run_cli({"--out", path.string(), "regime"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "# regime");
  std::filesystem::remove(path);
}

TEST(Cli, ConstantsFileChangesResults) {
  const auto path = std::filesystem::temp_directory_path() / "envstat_cli_constants.txt";
  {
    std::ofstream f(path);
    f << "h = 1.3252140300000001e-33\n";  // doubled Planck constant
  }
  ::unsetenv("ENVSTAT_CONSTANTS");
  const auto base = run_cli({"regime"});
  const auto changed = run_cli({"--constants", path.string(), "regime"});
  ASSERT_EQ(changed.code, kExitOk) << changed.err;
  EXPECT_NE(base.out, changed.out);

  // The environment variable wins over the flag.
  ::setenv("ENVSTAT_CONSTANTS", path.string().c_str(), 1);
  EXPECT_EQ(run_cli({"regime"}).out, changed.out);
  EXPECT_EQ(run_cli({"--constants", "/nonexistent", "regime"}).out, changed.out);
  ::unsetenv("ENVSTAT_CONSTANTS");
  std::filesystem::remove(path);
}

TEST(Cli, StatsReportsDivergencePerRow) {
  const Outcome o = run_cli({"stats", "--statistics", "boson", "--mu", "1", "--eps", "0.5,2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("bosonic-divergence"), std::string::npos);
  EXPECT_NE(o.out.find("\n2,1,"), std::string::npos);
}

TEST(Cli, SahaTable) {
  const Outcome o = run_cli({"--preset", "hydrogen-plasma", "saha", "--T", "10000"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("T,x_classical,x_corrected"), std::string::npos);
  EXPECT_NE(o.out.find("\n10000,0.80717"), std::string::npos);
  EXPECT_EQ(run_cli({"--preset", "air", "saha"}).code, kExitUsage);
}

TEST(Cli, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-1.0 / 0.0), "-inf");
}
