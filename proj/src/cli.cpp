#include "envstat/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "envstat/constants.hpp"
#include "envstat/distrib.hpp"
#include "envstat/ensembles.hpp"
#include "envstat/envcore.hpp"
#include "envstat/errors.hpp"
#include "envstat/saha.hpp"
#include "envstat/thermo.hpp"

namespace envstat::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Each extra qubit costs ~8x; N = 8 takes a few seconds.
constexpr std::int64_t kMaxEnvarianceQubits = 8;

// Raised for argument problems the parser itself cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "csv";
  std::string out_path;
  std::string constants_path;
  std::uint64_t seed = 42;
  std::string preset;
};

struct EnvarianceArgs {
  std::int64_t N = 1;
  std::int64_t trials = 10;
};

struct DistributionArgs {
  std::int64_t N = 100;
  std::optional<double> p;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> M;
  std::optional<double> lambda;
};

struct GasArgs {
  std::optional<double> mass;
  std::optional<double> T;
  std::optional<double> N;
  std::optional<double> V;
};

struct StatsArgs {
  std::string statistics = "fermion";
  double beta = 1.0;
  double mu = 0.0;
  std::vector<double> eps;
  double eps_min = 0.5;
  double eps_max = 5.0;
  std::int64_t eps_count = 10;
};

struct SahaArgs {
  std::vector<double> T;
  double T_min = 5e3;
  double T_max = 3e4;
  std::int64_t T_count = 26;
  std::optional<double> n_total;
  std::optional<double> coherence_volume;
  bool corrected = true;
  bool exact_masses = false;
};

// ENVSTAT_CONSTANTS, when set and non-empty, takes precedence over --constants.
PhysicalConstants resolve_constants(const RunConfig& cfg) {
  std::string path = cfg.constants_path;
  if (const char* env = std::getenv("ENVSTAT_CONSTANTS"); env != nullptr && *env != '\0') path = env;
  if (path.empty()) return PhysicalConstants::codata();
  try {
    return PhysicalConstants::load(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> linear_grid(double lo, double hi, std::int64_t count) {
  if (count < 1) throw UsageError("grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

// ------------------------------------------------------------- commands

std::vector<Table> cmd_envariance(const EnvarianceArgs& a, const RunConfig& cfg) {
  if (a.N < 1 || a.N > kMaxEnvarianceQubits) throw UsageError("--N must be in 1..8");
  if (a.trials < 0) throw UsageError("--trials must be non-negative");
  using namespace envcore;
  const auto n = static_cast<std::size_t>(a.N);
  const PureState state = make_equal_weight_state(n);
  const Bipartition cut = Bipartition::leading(n, 2 * n);
  std::mt19937_64 rng(cfg.seed);

  Table fid{"fidelity", {"trial", "fidelity", "infidelity"}, {}};
  for (std::int64_t t = 0; t < a.trials; ++t) {
    const UnitaryMatrix u = random_support_preserving_unitary(state, cut, rng);
    const UnitaryMatrix ue = construct_compensator(state, cut, u);
    const PureState restored = apply_local(apply_local(state, u, Side::System, cut), ue, Side::Environment, cut);
    const double f = fidelity(state, restored);
    fid.add_row({t, f, 1.0 - f});
  }

  // Swapping |0> with |k> on the system is undone on the environment; the
  // two outcomes then carry equal Born weight.
  const DensityMatrix rho = partial_trace(state, cut);
  const auto dim = static_cast<Eigen::Index>(rho.dimension());
  const Pmf probs = born_probabilities(rho, Matrix::Identity(dim, dim));
  Table eq{"equiprobability", {"swap_a", "swap_b", "fidelity", "p_a", "p_b", "abs_diff"}, {}};
  const std::size_t swaps = std::min<std::size_t>(rho.dimension() - 1, 16);
  for (std::size_t k = 1; k <= swaps; ++k) {
    const UnitaryMatrix u = transposition(rho.dimension(), 0, k);
    const UnitaryMatrix ue = construct_compensator(state, cut, u);
    const PureState restored = apply_local(apply_local(state, u, Side::System, cut), ue, Side::Environment, cut);
    eq.add_row({std::int64_t{0}, static_cast<std::int64_t>(k), fidelity(state, restored), probs[0], probs[k],
                std::abs(probs[0] - probs[k])});
  }
  return {fid, eq};
}

std::vector<Table> cmd_distributions(const DistributionArgs& a) {
  if (a.N < 1 || a.N > distrib::kMaxBinomialN) throw UsageError("--N must be in 1..10^7");
  if (a.p && (a.m || a.M)) throw UsageError("give either --p or --m/--M, not both");
  if (a.m.has_value() != a.M.has_value()) throw UsageError("--m and --M go together");
  std::optional<distrib::AncillaEmbedding> emb;
  double p = a.p.value_or(0.5);
  if (a.m) {
    if (!(0 < *a.m && *a.m < *a.M)) throw UsageError("need 0 < m < M");
    emb.emplace(*a.m, *a.M, a.N);
    p = emb->p();
  }
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
  if (a.lambda && !(*a.lambda > 0.0 && *a.lambda < static_cast<double>(a.N))) {
    throw UsageError("--lambda must satisfy 0 < lambda < N");
  }

  const Pmf binom = distrib::binomial_pmf(a.N, p);
  const double dn = static_cast<double>(a.N);
  const bool gaussian_ok = dn * p * (1.0 - p) >= 1.0;

  Table pmf{"pmf", {"n", "binomial"}, {}};
  if (emb) pmf.columns.push_back("fine_count");
  if (gaussian_ok) {
    pmf.columns.push_back("gaussian");
    pmf.columns.push_back("abs_diff");
  }
  std::function<double(double)> density;
  if (gaussian_ok) density = distrib::gaussian_approx(a.N, p);
  for (std::int64_t n = 0; n <= a.N; ++n) {
    const double b = binom[static_cast<std::size_t>(n)];
    std::vector<Cell> row{n, b};
    if (emb) row.emplace_back(std::round(std::exp(distrib::ancilla_fine_count(*emb, n))));
    if (gaussian_ok) {
      const double g = density(static_cast<double>(n));
      row.emplace_back(g);
      row.emplace_back(std::abs(b - g));
    }
    pmf.add_row(std::move(row));
  }

  std::vector<Table> out{pmf};
  Table metrics{"metrics", {"metric", "value"}, {}};
  if (gaussian_ok) metrics.add_row({std::string("sup_gaussian"), distrib::gaussian_sup_error(a.N, p)});
  if (a.lambda) {
    const double lam = *a.lambda;
    const Pmf pb = distrib::binomial_pmf(a.N, lam / dn);
    const Pmf pp = distrib::poisson_pmf(lam);
    Table pois{"poisson", {"n", "binomial_lambda_over_N", "poisson", "abs_diff"}, {}};
    for (std::size_t n = 0; n < pp.size(); ++n) {
      pois.add_row({static_cast<std::int64_t>(n), pb.mass(n), pp[n], std::abs(pb.mass(n) - pp[n])});
    }
    out.push_back(pois);
    metrics.add_row({std::string("tv_poisson"), total_variation(pb, pp)});
    metrics.add_row({std::string("le_cam_bound"), lam * lam / dn});
  }
  out.push_back(metrics);
  return out;
}

thermo::GasState resolve_gas(const GasArgs& a, const RunConfig& cfg) {
  thermo::GasState gas = thermo::air_preset();
  if (cfg.preset == "rb87-cold") {
    gas = thermo::rb87_cold_preset();
  } else if (!cfg.preset.empty() && cfg.preset != "air") {
    throw UsageError("unknown gas preset '" + cfg.preset + "' (air, rb87-cold)");
  }
  if (a.mass) gas.m = *a.mass;
  if (a.T) gas.T = *a.T;
  if (a.N) gas.N = *a.N;
  if (a.V) gas.V = *a.V;
  try {
    gas.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return gas;
}

Table regime_table(const thermo::GasState& gas, const PhysicalConstants& c) {
  const double param = thermo::degeneracy_parameter(gas, c);
  Table t{"regime", {"thermal_wavelength", "degeneracy_parameter", "regime"}, {}};
  t.add_row({thermo::thermal_wavelength(gas.m, gas.T, c), param,
             std::string(thermo::to_string(thermo::classify_regime(param)))});
  return t;
}

std::vector<Table> cmd_gibbs(const GasArgs& a, const RunConfig& cfg) {
  const PhysicalConstants c = resolve_constants(cfg);
  const thermo::GasState gas = resolve_gas(a, cfg);
  thermo::GasState other = gas;
  other.m = 2.0 * gas.m;
  const double nk = gas.N * c.k_B;
  using thermo::Counting;
  const double classical = thermo::classical_entropy(gas, c);
  const double ent = thermo::entanglement_entropy(gas.N, c);

  Table t{"entropy", {"quantity", "value", "per_NkB"}, {}};
  auto add = [&](const char* name, double v) { t.add_row({std::string(name), v, v / nk}); };
  add("classical", classical);
  add("entanglement", ent);
  add("entanglement_stirling", thermo::entanglement_entropy_stirling(gas.N, c));
  add("sackur_tetrode", thermo::sackur_tetrode_entropy(gas, c));
  add("classical_minus_entanglement", classical - ent);
  add("mixing_classical_identical", thermo::mixing_entropy(gas, gas, true, Counting::Classical, c));
  add("mixing_quantum_identical", thermo::mixing_entropy(gas, gas, true, Counting::Quantum, c));
  add("mixing_quantum_distinct", thermo::mixing_entropy(gas, other, false, Counting::Quantum, c));
  add("two_N_kB_ln2", 2.0 * nk * std::log(2.0));
  return {t, regime_table(gas, c)};
}

std::vector<Table> cmd_regime(const GasArgs& a, const RunConfig& cfg) {
  const PhysicalConstants c = resolve_constants(cfg);
  return {regime_table(resolve_gas(a, cfg), c)};
}

std::vector<Table> cmd_stats(const StatsArgs& a) {
  using namespace ensembles;
  if (a.statistics != "boson" && a.statistics != "fermion") throw UsageError("--statistics must be boson or fermion");
  if (!(a.beta > 0.0)) throw UsageError("--beta must be positive");
  const std::vector<double> grid = a.eps.empty() ? linear_grid(a.eps_min, a.eps_max, a.eps_count) : a.eps;
  const ThermoParams params(a.beta, a.mu);
  Table t{"occupation", {"epsilon", "x", "partition", "occupation", "oracle_occupation", "abs_diff", "cutoff", "error"}, {}};
  for (double eps : grid) {
    const ModeSpec mode = a.statistics == "boson" ? ModeSpec::boson(eps) : ModeSpec::fermion(eps);
    const double x = a.beta * (eps - a.mu);
    try {
      const double z = mode_partition(mode, params);
      const double occ = mean_occupation(mode, params);
      const EnumeratedMode oracle = enumerate_mode(mode, params);
      t.add_row({eps, x, z, occ, oracle.occupation, std::abs(occ - oracle.occupation), oracle.cutoff, std::string()});
    } catch (const Error& e) {
      t.add_row({eps, x, kNaN, kNaN, kNaN, kNaN, std::int64_t{0}, std::string(to_string(e.code()))});
    }
  }
  return {t};
}

std::vector<Table> cmd_saha(const SahaArgs& a, const RunConfig& cfg) {
  if (!cfg.preset.empty() && cfg.preset != "hydrogen-plasma") {
    throw UsageError("unknown saha preset '" + cfg.preset + "' (hydrogen-plasma)");
  }
  const PhysicalConstants c = resolve_constants(cfg);
  const std::vector<double> grid = a.T.empty() ? linear_grid(a.T_min, a.T_max, a.T_count) : a.T;
  saha::SahaProblem problem = saha::SahaProblem::hydrogen_default(c);
  if (a.n_total) problem.n_total = *a.n_total;
  if (a.coherence_volume) problem.coherence_volume = *a.coherence_volume;
  problem.exact_masses = a.exact_masses;
  for (double T : grid) {
    if (!(T > 0.0)) throw UsageError("temperatures must be positive");
  }
  try {
    problem.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  problem.correction_enabled = false;
  const auto classical = saha::ionization_curve(problem, grid, c);
  problem.correction_enabled = true;
  const auto corrected = a.corrected ? saha::ionization_curve(problem, grid, c) : std::vector<saha::CurvePoint>{};

  Table t{"ionization", {"T", "x_classical"}, {}};
  if (a.corrected) {
    for (const char* col : {"x_corrected", "log_Gamma_ind", "particles_in_volume"}) t.columns.emplace_back(col);
  }
  for (const char* col : {"log_K_classical", "residual_classical"}) t.columns.emplace_back(col);
  if (a.corrected) t.columns.emplace_back("residual_corrected");
  t.columns.emplace_back("error");

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& cl = classical[i];
    std::string error = cl.error;
    std::vector<Cell> row{grid[i], cl.result ? cl.result->x : kNaN};
    if (a.corrected) {
      const auto& co = corrected[i];
      if (error.empty()) error = co.error;
      row.emplace_back(co.result ? co.result->x : kNaN);
      row.emplace_back(co.result ? co.result->log_Gamma_ind : kNaN);
      row.emplace_back(co.result ? co.result->particles_in_volume : kNaN);
    }
    row.emplace_back(cl.result ? cl.result->log_K_classical : kNaN);
    row.emplace_back(cl.result ? cl.result->residual : kNaN);
    if (a.corrected) row.emplace_back(corrected[i].result ? corrected[i].result->residual : kNaN);
    row.emplace_back(error);
    t.add_row(std::move(row));
  }
  return {t};
}

}  // namespace

// ---------------------------------------------------------------- tables

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::DimensionMismatch, "table '" + name + "' row has wrong width");
  }
  rows.push_back(std::move(row));
}

std::vector<double> Table::numeric_column(const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw Error(ErrorCode::InvalidArgument, "no column '" + column + "'");
  const auto idx = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const Cell& cell = row[idx];
    if (const auto* d = std::get_if<double>(&cell)) out.push_back(*d);
    else if (const auto* i = std::get_if<std::int64_t>(&cell)) out.push_back(static_cast<double>(*i));
    else out.push_back(kNaN);
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<Table>& tables) {
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& table = tables[t];
    if (t > 0) out << '\n';
    out << "# " << table.name << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
      out << '\n';
    }
  }
}

void write_json(std::ostream& out, const std::vector<Table>& tables) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const Table& table : tables) {
    nlohmann::ordered_json cols = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        const Cell& cell = row[c];
        if (const auto* d = std::get_if<double>(&cell)) {
          // JSON has no NaN/inf; emit them as null.
          if (std::isfinite(*d)) arr.push_back(*d);
          else arr.push_back(nullptr);
        } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
          arr.push_back(*i);
        } else {
          arr.push_back(std::get<std::string>(cell));
        }
      }
      cols[table.columns[c]] = std::move(arr);
    }
    doc[table.name] = std::move(cols);
  }
  out << doc.dump(2) << '\n';
}

// ------------------------------------------------------------------- run

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistical mechanics from envariance: tables for every pipeline", "envstat"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "Output file (default: stdout)");
  app.add_option("--constants", cfg.constants_path, "Constants file (name = value, SI)");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--preset", cfg.preset, "air | rb87-cold | hydrogen-plasma");

  EnvarianceArgs env_args;
  auto* env_cmd = app.add_subcommand("envariance", "Compensating-unitary round trips and swap equiprobability");
  env_cmd->add_option("--N", env_args.N, "System qubits");
  env_cmd->add_option("--trials", env_args.trials, "Random unitaries to test");

  DistributionArgs dist_args;
  auto* dist_cmd = app.add_subcommand("distributions", "Binomial, ancilla, Poisson and Gaussian tables");
  dist_cmd->add_option("--N", dist_args.N, "Number of subsystems");
  dist_cmd->add_option("--p", dist_args.p, "Up probability");
  dist_cmd->add_option("--m", dist_args.m, "Ancilla labels attached to up");
  dist_cmd->add_option("--M", dist_args.M, "Ancilla labels per subsystem");
  dist_cmd->add_option("--lambda", dist_args.lambda, "Poisson rate");

  GasArgs gas_args;
  auto add_gas = [&gas_args](CLI::App* cmd) {
    cmd->add_option("--mass", gas_args.mass, "Particle mass (kg)");
    cmd->add_option("--T", gas_args.T, "Temperature (K)");
    cmd->add_option("--N", gas_args.N, "Particle count");
    cmd->add_option("--V", gas_args.V, "Volume (m^3)");
  };
  auto* gibbs_cmd = app.add_subcommand("gibbs", "Entropy bookkeeping and Gibbs mixing");
  add_gas(gibbs_cmd);
  auto* regime_cmd = app.add_subcommand("regime", "Degeneracy parameter and regime label");
  add_gas(regime_cmd);

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Bose/Fermi occupations against enumeration");
  stats_cmd->add_option("--statistics", stats_args.statistics, "boson | fermion");
  stats_cmd->add_option("--beta", stats_args.beta, "Inverse temperature");
  stats_cmd->add_option("--mu", stats_args.mu, "Chemical potential");
  stats_cmd->add_option("--eps", stats_args.eps, "Mode energies")->delimiter(',');
  stats_cmd->add_option("--eps-min", stats_args.eps_min, "Grid start");
  stats_cmd->add_option("--eps-max", stats_args.eps_max, "Grid end");
  stats_cmd->add_option("--eps-count", stats_args.eps_count, "Grid points");

  SahaArgs saha_args;
  auto* saha_cmd = app.add_subcommand("saha", "Hydrogen ionization curve");
  saha_cmd->add_option("--T", saha_args.T, "Temperatures (K)")->delimiter(',');
  saha_cmd->add_option("--T-min", saha_args.T_min, "Grid start (K)");
  saha_cmd->add_option("--T-max", saha_args.T_max, "Grid end (K)");
  saha_cmd->add_option("--T-count", saha_args.T_count, "Grid points");
  saha_cmd->add_option("--n-total", saha_args.n_total, "Hydrogen nuclei per m^3");
  saha_cmd->add_option("--coherence-volume", saha_args.coherence_volume, "Counting volume (m^3)");
  saha_cmd->add_option("--corrected", saha_args.corrected, "Also solve with the indistinguishability factor");
  saha_cmd->add_flag("--exact-masses", saha_args.exact_masses, "Use m_H = m_p + m_e");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::vector<Table> tables;
    if (*env_cmd) tables = cmd_envariance(env_args, cfg);
    else if (*dist_cmd) tables = cmd_distributions(dist_args);
    else if (*gibbs_cmd) tables = cmd_gibbs(gas_args, cfg);
    else if (*regime_cmd) tables = cmd_regime(gas_args, cfg);
    else if (*stats_cmd) tables = cmd_stats(stats_args);
    else if (*saha_cmd) tables = cmd_saha(saha_args, cfg);

    const Format format = cfg.format == "json" ? Format::Json : Format::Csv;
    auto emit = [&](std::ostream& os) {
      if (format == Format::Json) write_json(os, tables);
      else write_csv(os, tables);
    };
    if (cfg.out_path.empty()) {
      emit(out);
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot open " + cfg.out_path + " for writing");
      emit(file);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace envstat::cli
