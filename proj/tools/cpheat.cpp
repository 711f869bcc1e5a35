// cpheat: command-line driver for the heat-kernel and Cowling-Price checks.
//
// Exit codes: 0 pass, 1 selftest failure, 2 scenario or invariant mismatch,
// 3 numeric error, 64 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cpheat/heat.hpp"
#include "cpheat/io.hpp"
#include "cpheat/scenarios.hpp"
#include "cpheat/selftest.hpp"
#include "cpheat/symmspace.hpp"

namespace {

using namespace cpheat;

constexpr int kExitSelftest = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUsage = 64;

// Thrown for problems with the command line or config file.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to the configured path, or standard output when it is empty or "-".
void emit(const RunConfig& cfg, const CsvTable& table) {
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write_csv(std::cout, table);
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + cfg.output_path);
  write_csv(out, table);
}

RankOneSpace resolve_space(const RunConfig& cfg) {
  try {
    return preset(cfg.space);
  } catch (const NumericError& e) {
    throw UsageError(e.what());
  }
}

int cmd_kernel(const RunConfig& cfg) {
  const RankOneSpace space = resolve_space(cfg);
  const JacobiParams J = space.jacobi();
  const HeatKernel h(J, cfg.t);
  CsvTable table;
  table.header = {"r", "h_t", "envelope", "ratio"};
  const int n = static_cast<int>(std::floor(cfg.r_max / cfg.r_step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double r = i * cfg.r_step;
    const double lh = h.log_value(r), le = log_ady_envelope(J, cfg.t, r);
    table.rows.push_back({format_double(r), format_double(std::exp(lh)), format_double(std::exp(le)),
                          format_double(std::exp(lh - le))});
  }
  emit(cfg, table);

  const RatioRange coarse = ady_ratio_scan(J, cfg.t, cfg.r_max, cfg.r_step);
  const RatioRange fine = ady_ratio_scan(J, cfg.t, cfg.r_max, 0.5 * cfg.r_step);
  const double drift = std::abs(fine.spread() / coarse.spread() - 1.0);
  const bool ok = coarse.spread() <= 50.0 && drift <= 0.05;
  std::cerr << space.name << " t=" << cfg.t << " ratio in [" << coarse.min << ", " << coarse.max
            << "], C/c=" << coarse.spread() << ", refinement drift " << drift << (ok ? "" : "  FAILED") << '\n';
  return ok ? 0 : kExitMismatch;
}

int cmd_cp(const RunConfig& cfg, const std::string& scenario) {
  resolve_space(cfg);
  if (scenario != "all") {
    const auto& ids = scenario_ids();
    if (std::find(ids.begin(), ids.end(), scenario) == ids.end())
      throw UsageError("unknown scenario " + scenario);
  }
  const auto rows = run_scenario(scenario, {cfg.space, cfg.t});
  emit(cfg, scenario_table(rows));
  const bool ok = all_matched(rows);
  for (const auto& r : rows)
    if (!r.matched)
      std::cerr << "mismatch: " << r.scenario_id << " " << r.stage << ": got " << r.verdict << ", expected "
                << r.expected << '\n';
  return ok ? 0 : kExitMismatch;
}

int cmd_selftest(const RunConfig& cfg, std::optional<double> tol) {
  SelftestOptions opt;
  opt.seed = cfg.seed;
  opt.tolerance = tol;
  const auto rows = run_selftest(opt);
  emit(cfg, selftest_table(rows));
  int failed = 0;
  for (const auto& r : rows) {
    std::cerr << (r.pass ? "pass  " : "FAIL  ") << r.module << ": " << r.invariant << " (" << r.value
              << " vs " << r.tolerance << ")\n";
    if (!r.pass) ++failed;
  }
  std::cerr << rows.size() - failed << "/" << rows.size() << " invariants pass\n";
  return failed ? kExitSelftest : 0;
}

int cmd_presets(const RunConfig& cfg) {
  CsvTable table;
  table.header = {"name", "m_gamma", "m_2gamma", "alpha", "beta", "rho", "dim_X", "V"};
  for (const auto& s : catalog())
    table.rows.push_back({s.name, std::to_string(s.m_gamma), std::to_string(s.m_2gamma), format_double(s.alpha),
                          format_double(s.beta), format_double(s.rho0), std::to_string(s.dim_X),
                          std::to_string(s.V)});
  emit(cfg, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat kernels and Cowling-Price uncertainty checks on rank-one symmetric spaces"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value file; command-line flags take precedence")
      ->check(CLI::ExistingFile);

  // Flag values are applied over the config file as key = value overrides.
  std::map<std::string, std::string> flags;
  auto add_value = [&flags](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(flag, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  auto add_common = [&](CLI::App* sub) {
    add_value(sub, "--output,-o", "output", "write CSV here instead of standard output");
    add_value(sub, "--abs-tol", "abs_tol", "absolute quadrature tolerance");
    add_value(sub, "--rel-tol", "rel_tol", "relative quadrature tolerance");
  };

  CLI::App* kernel = app.add_subcommand("kernel", "tabulate h_t against the two-sided envelope");
  add_value(kernel, "--space", "space", "preset name (default H3)");
  add_value(kernel, "--t", "t", "time (default 0.5)");
  add_value(kernel, "--r-max", "r_max", "largest radius (default 12)");
  add_value(kernel, "--r-step", "r_step", "radial step (default 0.05)");
  add_common(kernel);

  std::string scenario = "all";
  CLI::App* cp = app.add_subcommand("cp", "run Cowling-Price scenarios");
  cp->add_option("--scenario", scenario, "scenario id or all");
  add_value(cp, "--space", "space", "preset name (default H3)");
  add_value(cp, "--t", "t", "time (default 0.5)");
  add_common(cp);

  std::optional<double> tol;
  CLI::App* selftest = app.add_subcommand("selftest", "run the invariant suite");
  add_value(selftest, "--seed", "seed", "seed of the random draws (default 7)");
  selftest->add_option("--tol", tol, "replace every tolerance");
  add_common(selftest);

  CLI::App* presets = app.add_subcommand("presets", "list the preset catalog");
  add_common(presets);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      cfg.apply(parse_config(in));
    }
    cfg.apply(flags);
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.validate();
    if (tol && !(*tol > 0.0)) throw UsageError("--tol must be positive");
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*kernel) return cmd_kernel(cfg);
    if (*cp) return cmd_cp(cfg, scenario);
    if (*selftest) return cmd_selftest(cfg, tol);
    return cmd_presets(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
