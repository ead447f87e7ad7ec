// vrm: sweeps, reference tables and the acceptance suite from the command line.
//
// exit status: 0 everything passed, 1 a tolerance / solver failure,
// 2 bad arguments or configuration.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "vrm/harness/acceptance.hpp"
#include "vrm/harness/config.hpp"
#include "vrm/harness/export.hpp"
#include "vrm/harness/sweep.hpp"
#include "vrm/harness/tables.hpp"

namespace fs = std::filesystem;
using namespace vrm::harness;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

struct Flags {
  std::optional<bool> oracle;
  std::optional<double> tol;
  std::optional<fs::path> out;
  std::optional<int> workers;
};

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw vrm::Error("cannot write " + path.string());
}

int cmd_sweep(const std::string& file, const Flags& flags) {
  RunConfig cfg = load_config(file);
  if (flags.oracle) cfg.oracle = *flags.oracle;
  if (flags.tol) cfg.oracle_tol = *flags.tol;
  if (flags.out) cfg.out_dir = *flags.out;
  if (flags.workers) cfg.workers = *flags.workers;
  validate(cfg);

  const SweepResult sweep = run_sweep(cfg);
  const ExportedFiles files = export_series(sweep, cfg.out_dir, cfg.debug_dump);

  std::cout << fmt::format("{}: {} energies, {} failed -> {}\n", sweep.name, sweep.rows.size(),
                           sweep.failures, files.csv.string());
  for (const auto& row : sweep.rows)
    if (!row.error.empty()) std::cerr << fmt::format("  E={:.17g}: {}\n", row.E, row.error);
  return sweep.failures == 0 ? kOk : kFail;
}

int cmd_table(const std::string& id, const Flags& flags) {
  TableOptions opts;
  if (flags.tol) opts.oracle_tol = *flags.tol;
  if (flags.workers) opts.workers = *flags.workers;
  const TableReport rep = reproduce_table(id, opts);
  std::ostringstream ss;
  print_report(ss, rep);
  std::cout << ss.str();
  if (flags.out) write_text(*flags.out / (id + ".txt"), ss.str());
  return rep.pass() ? kOk : kFail;
}

int cmd_check(const Flags& flags, bool verbose) {
  AcceptanceOptions opts;
  if (flags.tol) opts.oracle_tol = *flags.tol;
  if (flags.workers) opts.workers = *flags.workers;
  std::ostringstream report;
  int failed = 0;
  for (int n = 1; n <= acceptance_count; ++n) {
    const CriterionResult r = run_criterion(n, opts);
    std::ostringstream one;
    print_criterion(one, r, verbose);
    std::cout << one.str() << std::flush;
    report << one.str();
    failed += r.pass ? 0 : 1;
  }
  const std::string summary = fmt::format("{}/{} criteria passed\n", acceptance_count - failed, acceptance_count);
  std::cout << summary;
  report << summary;
  if (flags.out) write_text(*flags.out / "acceptance.txt", report.str());
  return failed == 0 ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational R-matrix tunneling solver"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_flag_callback("--oracle", [&] { flags.oracle = true; }, "Run the ODE oracle next to the solver");
  app.add_flag_callback("--no-oracle", [&] { flags.oracle = false; }, "Skip the oracle");
  app.add_option_function<double>("--tol", [&](double v) { flags.tol = v; },
                                  "Oracle integration tolerance (>= 1e-12)");
  app.add_option_function<std::string>("--out", [&](const std::string& v) { flags.out = v; },
                                       "Output directory");
  app.add_option_function<int>("--workers", [&](int v) { flags.workers = v; },
                               "Worker threads for energy sweeps")
      ->check(CLI::PositiveNumber);

  std::string config_file, table_id, profile;
  bool quiet = false;
  auto* sweep = app.add_subcommand("sweep", "Solve every energy of a configuration and export CSV/plot data");
  sweep->add_option("config", config_file, "YAML configuration")->required();
  auto* table = app.add_subcommand("table", "Reproduce a reference table (table1, table2, table3, figures)");
  table->add_option("id", table_id)->required();
  auto* check = app.add_subcommand("check", "Run the acceptance suite");
  check->add_flag("-q,--quiet", quiet, "One line per criterion");
  auto* dump = app.add_subcommand("dump-config", "Print the default configuration of a profile family");
  dump->add_option("profile", profile)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*sweep) return cmd_sweep(config_file, flags);
    if (*table) {
      const auto ids = table_ids();
      if (std::find(ids.begin(), ids.end(), table_id) == ids.end()) {
        std::cerr << fmt::format("vrm: unknown table '{}' (expected table1, table2, table3 or figures)\n", table_id);
        return kConfig;
      }
      return cmd_table(table_id, flags);
    }
    if (*check) return cmd_check(flags, !quiet);
    if (*dump) {
      std::cout << to_yaml(family_defaults(profile));
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "vrm: configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const vrm::PreconditionError& e) {
    std::cerr << "vrm: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "vrm: " << e.what() << '\n';
    return kFail;
  }
  return kConfig;
}
