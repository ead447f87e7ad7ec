#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vrm/harness/config.hpp"
#include "vrm/harness/export.hpp"
#include "vrm/harness/reference.hpp"
#include "vrm/harness/sweep.hpp"
#include "vrm/harness/tables.hpp"

using namespace vrm;
using namespace vrm::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("VRM_TEST_TMP");
  fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "vrm_harness_test";
  fs::path p = root / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a configuration error");
  return ConfigError("", 0, "");
}

}  // namespace

TEST_CASE("minimal exponential-step document takes the defaults") {
  const RunConfig c = parse_config("profile: {family: exponential-step}\n");
  CHECK(c.lambda_b == 2.0);
  CHECK(c.lambda_b_tilde == 8.0);
  CHECK(c.a == 1.0);
  CHECK(c.b == 8.0);
  CHECK(resolve(c.basis).size() == 60);
  CHECK(std::holds_alternative<ExponentialStep>(c.profile));
}

TEST_CASE("zero energy step names the field") {
  const auto e = config_error(
      "profile: {family: bell}\n"
      "energy:\n"
      "  start: 0.5\n"
      "  step: 0\n"
      "  end: 4\n");
  CHECK(e.field() == "energy.step");
  CHECK(e.line() == 4);
  CHECK(std::string(e.what()).find("energy.step") != std::string::npos);
}

TEST_CASE("configuration errors") {
  CHECK(config_error("profile: {family: bell}\nsolver: {lambda_bee: 2}\n").field() == "solver.lambda_bee");
  CHECK(config_error("profile: {family: bell}\nbogus: 1\n").field() == "bogus");
  CHECK(config_error("profile: {family: nope}\n").field() == "profile.family");
  CHECK(config_error("setup: {a: 1}\n").field() == "profile");
  CHECK(config_error("profile: {family: bell}\nsetup: {a: 3, b: 2}\n").field() == "setup.b");
  CHECK(config_error("profile: {family: bell}\nsetup: {a: x}\n").field() == "setup.a");
  CHECK(config_error("profile: {family: bell}\nbasis: {kappas: [1.0, 0.5]}\n").field() == "basis.kappas");
  CHECK(config_error("profile: {family: bell}\nsolver: {lambda_b: 3, lambda_b_tilde: 3}\n").field() ==
        "solver.lambda_b_tilde");
  CHECK(config_error("profile: {family: bell}\nsetup: {V1: 1.0}\n").field() == "energy.start");
  CHECK(config_error("profile: {family: bell}\noracle: {tol: 1e-14}\n").field() == "oracle.tol");
  CHECK(config_error("profile: {family: bell, V0: [1]}\n").field() == "profile.V0");
  CHECK(config_error("profile: {family: sampled, knots: [[1, 0], [2, 1]]}\n").field() == "profile.knots");
  CHECK(config_error("profile: [1, 2\n").line() >= 1);
}

TEST_CASE("Eckart outer potentials are evaluated at the window edges") {
  const RunConfig c = parse_config(
      "profile: {family: eckart}\n"
      "setup: {V1: evaluate-at-a, V3: evaluate-at-b}\n");
  const ScatteringSetup s = setup_at(c, 2.5);
  CHECK(s.V1 == evaluate(c.profile, 2.0));
  CHECK(s.V3 == evaluate(c.profile, 13.0));
  CHECK(s.V3 > s.V1);
  CHECK(s.V1 > 0.0);
}

TEST_CASE("overrides and explicit lists") {
  const RunConfig c = parse_config(
      "name: custom\n"
      "profile: {family: linear-step, B: 6}\n"
      "setup: {b: 7}\n"
      "basis: {end: 3.0}\n"
      "energy: {values: [0.9, 0.5]}\n"
      "solver: {matching: basis-derivative}\n"
      "sweep: {workers: 3}\n");
  CHECK(c.name == "custom");
  CHECK(std::get<LinearStep>(c.profile).B == 6.0);
  CHECK(std::get<LinearStep>(c.profile).V0 == 0.5);
  CHECK(c.b == 7.0);
  CHECK(resolve(c.basis).size() == 30);
  CHECK(resolve(c.energy) == std::vector<double>{0.9, 0.5});
  CHECK(c.matching == Matching::BasisDerivative);
  CHECK(c.workers == 3);
}

TEST_CASE("to_yaml round trip") {
  for (const auto& family : catalog_families()) {
    const RunConfig a = family_defaults(family);
    const RunConfig b = parse_config(to_yaml(a));
    CHECK(to_yaml(b) == to_yaml(a));
    CHECK(b.lambda_b == a.lambda_b);
    CHECK(resolve(b.basis) == resolve(a.basis));
    CHECK(resolve(b.energy) == resolve(a.energy));
    CHECK(family_name(b.profile) == family);
  }
}

TEST_CASE("every catalog default validates") {
  for (const auto& family : catalog_families()) CHECK_NOTHROW(validate(family_defaults(family)));
}

TEST_CASE("bell sweep") {
  RunConfig c = family_defaults("bell");
  c.oracle = true;
  const SweepResult r = run_sweep(c);
  REQUIRE(r.rows.size() == 15);
  CHECK(r.failures == 0);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].E > r.rows[i - 1].E);
    CHECK(r.rows[i].oracle->T >= r.rows[i - 1].oracle->T);
  }
}

TEST_CASE("linear-step sweep brackets the crossing") {
  const SweepResult r = run_sweep(family_defaults("linear-step"));
  bool found = false;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto& lo = r.rows[i - 1].vrm->result;
    const auto& hi = r.rows[i].vrm->result;
    if (lo.T < lo.R && hi.T >= hi.R) {
      found = true;
      CHECK(lo.E >= 1.0);
      CHECK(hi.E <= 1.2 + 1e-9);
    }
  }
  CHECK(found);
}

TEST_CASE("exponential-step sweep contains the tabulated row") {
  const SweepResult r = run_sweep(family_defaults("exponential-step"));
  bool found = false;
  for (const auto& row : r.rows) {
    if (std::abs(row.E - 0.25) < 1e-12) {
      found = true;
      CHECK(std::abs(row.vrm->result.T - 0.7566) <= 5e-3);
    }
  }
  CHECK(found);
}

TEST_CASE("workers do not change the result") {
  RunConfig c = family_defaults("parabolic");
  std::ostringstream one, four;
  write_csv(one, run_sweep(c));
  c.workers = 4;
  write_csv(four, run_sweep(c));
  CHECK(one.str() == four.str());
}

TEST_CASE("failed rows are kept") {
  RunConfig c = family_defaults("bell");
  c.energy = std::vector<double>{1.0, 2.0};
  c.quad.max_depth = 0;
  c.quad.tol = 1e-300;
  const SweepResult r = run_sweep(c);
  CHECK(r.rows.size() == 2);
  CHECK(r.failures == 2);
  std::ostringstream os;
  write_csv(os, r);
  CHECK(os.str().find("nan") != std::string::npos);
}

TEST_CASE("csv export") {
  RunConfig c = family_defaults("exponential-step");
  c.name = "three";
  c.energy = GridSpec{0.1, 0.1, 0.3};
  const fs::path dir = scratch("csv");
  const auto files = export_series(run_sweep(c), dir);
  const std::string csv = slurp(files.csv);
  CHECK(count_lines(csv) == 4);
  CHECK(csv.rfind("E,T,R,E_av,unitarity_defect\n", 0) == 0);
  CHECK(files.plots.size() == 4);
  for (const auto& p : files.plots) CHECK(count_lines(slurp(p)) == 3);
  CHECK(files.debug.empty());

  c.oracle = true;
  const auto with = export_series(run_sweep(c), dir, true);
  CHECK(slurp(with.csv).rfind("E,T,R,E_av,unitarity_defect,T_oracle,R_oracle\n", 0) == 0);
  CHECK(with.plots.size() == 6);
  CHECK(count_lines(slurp(with.debug)) == 1 + 2 * 3);
}

TEST_CASE("identical configuration gives identical bytes") {
  RunConfig c = family_defaults("eckart");
  c.oracle = true;
  const auto a = export_series(run_sweep(c), scratch("run1"));
  c.workers = 3;
  const auto b = export_series(run_sweep(c), scratch("run2"));
  CHECK(slurp(a.csv) == slurp(b.csv));
  for (std::size_t i = 0; i < a.plots.size(); ++i) CHECK(slurp(a.plots[i]) == slurp(b.plots[i]));
}

TEST_CASE("csv numbers use 17 significant digits") {
  RunConfig c = family_defaults("bell");
  c.energy = std::vector<double>{0.1 + 0.2};
  std::ostringstream os;
  write_csv(os, run_sweep(c));
  CHECK(os.str().find("\n0.30000000000000004,") != std::string::npos);
}

TEST_CASE("empty sweep cannot be exported") {
  SweepResult r;
  r.name = "empty";
  CHECK_THROWS_AS(export_series(r, scratch("empty")), PreconditionError);
}

TEST_CASE("reference data") {
  const auto& d = reference_data();
  CHECK(d.table("table2").column("ANA") == std::vector<double>{0.4789, 0.7549, 0.8702});
  CHECK(d.table("table3").energies == std::vector<double>{0.05, 0.10, 0.25});
  CHECK(d.table("table1").rows.size() == 5);
  CHECK(d.figures.crossing.at("linear-step").value == 1.1);
  CHECK(d.figures.e_av_percent.at("bell").max_percent == 0.694);
  CHECK_THROWS_AS(d.table("table7"), Error);
  CHECK_THROWS_AS(d.table("table2").column("XYZ"), Error);
}

TEST_CASE("table reports") {
  const auto t2 = reproduce_table("table2");
  CHECK(t2.pass());
  std::size_t vrm_cells = 0;
  for (const auto& c : t2.cells) {
    if (c.reference == "table2 VRM") {
      ++vrm_cells;
      CHECK(c.delta() <= 0.005);
    }
  }
  CHECK(vrm_cells == 3);

  const auto t3 = reproduce_table("table3");
  CHECK(t3.pass());
  for (const auto& c : t3.cells)
    if (c.quantity == "oracle T") CHECK(c.delta() <= 0.002);

  const auto t1 = reproduce_table("table1");
  CHECK(t1.pass());
  std::ostringstream os;
  print_report(os, t1);
  CHECK(os.str().find("table1: PASS") != std::string::npos);

  CHECK_THROWS_AS(reproduce_table("table4"), Error);
}
