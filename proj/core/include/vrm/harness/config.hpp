#pragma once

// Run configuration: a YAML document with one section per module.
//
//   name: exponential-step
//   profile:    {family: exponential-step, V0: 0.5, a: 1.0}
//   setup:      {a: 1.0, b: 8.0, V1: 0.0, V3: 0.0}   # V1/V3 may be evaluate-at-a / evaluate-at-b
//   basis:      {start: 0.1, step: 0.1, end: 6.0}     # or {kappas: [...]}
//   solver:     {lambda_b: 2.0, lambda_b_tilde: 8.0, matching: log-derivative}
//   energy:     {start: 0.05, step: 0.025, end: 1.0}  # or {values: [...]}
//   quadrature: {tol: 1.0e-10}
//   oracle:     {enabled: false, tol: 1.0e-10}
//   output:     {dir: out, debug_dump: false}
//   sweep:      {workers: 1}
//
// Every key is optional except profile.family; missing keys take the
// defaults of that family (see family_defaults). Unknown keys are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vrm/error.hpp"
#include "vrm/potentials.hpp"
#include "vrm/quadrature.hpp"
#include "vrm/solver.hpp"

namespace vrm::harness {

/// Parse or validation failure. `field()` is the dotted key path
/// ("energy.step"); `line()` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

struct GridSpec {
  double start = 0.0;
  double step = 0.0;
  double end = 0.0;
};

/// Either an arithmetic grid or an explicit list.
using ValuesSpec = std::variant<GridSpec, std::vector<double>>;

enum class OuterMode { Explicit, EvaluateAtBoundary };

struct OuterSpec {
  OuterMode mode = OuterMode::Explicit;
  double value = 0.0;  ///< used when mode == Explicit
};

struct RunConfig {
  std::string name;
  PotentialProfile profile = ExponentialStep{};
  double a = 1.0;
  double b = 8.0;
  OuterSpec V1{};
  OuterSpec V3{};
  ValuesSpec basis = GridSpec{0.1, 0.1, 6.0};
  double lambda_b = 2.0;
  double lambda_b_tilde = 8.0;
  Matching matching = Matching::LogDerivative;
  ValuesSpec energy = GridSpec{0.05, 0.025, 1.0};
  QuadratureSpec quad{};
  bool oracle = false;
  double oracle_tol = 1e-10;
  std::filesystem::path out_dir = "out";
  bool debug_dump = false;
  int workers = 1;
};

/// Defaults for a catalog family ("linear-step", "exponential-step",
/// "parabolic", "bell", "eckart", "sampled"): window, basis grid and lambda
/// pair follow the figure captions; energy grids cover the plotted ranges.
/// Throws ConfigError(field "profile.family") for unknown names.
RunConfig family_defaults(std::string_view family);

std::vector<std::string> catalog_families();

/// Parses and validates. Throws ConfigError on the first problem.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Fail-fast check of every module precondition. Throws ConfigError naming
/// the first violated field.
void validate(const RunConfig& config);

/// YAML text that parse_config maps back to an equivalent RunConfig.
std::string to_yaml(const RunConfig& config);

// Resolved quantities.
std::vector<double> resolve(const ValuesSpec& spec);
double outer_value(const RunConfig& config, bool left);
ScatteringSetup setup_at(const RunConfig& config, double E);
BasisSet basis_of(const RunConfig& config);
SolveOptions solve_options(const RunConfig& config);

}  // namespace vrm::harness
