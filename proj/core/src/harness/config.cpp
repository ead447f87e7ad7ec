#include "vrm/harness/config.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "vrm/basis.hpp"

namespace vrm::harness {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : Error(line > 0 ? fmt::format("line {}: {}: {}", line, field, message)
                     : (field.empty() ? message : fmt::format("{}: {}", field, message))),
      field_(std::move(field)),
      line_(line) {}

namespace {

using Lines = std::map<std::string, int>;

int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void require_map(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) throw ConfigError(path, line_of(n), "expected a mapping");
}

void check_keys(const YAML::Node& n, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string list;
      for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      throw ConfigError(join(path, key), line_of(kv.first),
                        fmt::format("unknown key (allowed: {})", list));
    }
  }
}

double as_double(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ConfigError(path, line_of(n), "expected a number");
  try {
    return n.as<double>();
  } catch (const YAML::BadConversion&) {
    throw ConfigError(path, line_of(n), fmt::format("expected a number, got '{}'", n.Scalar()));
  }
}

bool as_bool(const YAML::Node& n, const std::string& path) {
  try {
    return n.as<bool>();
  } catch (const YAML::BadConversion&) {
    throw ConfigError(path, line_of(n), "expected true or false");
  }
}

std::string as_string(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ConfigError(path, line_of(n), "expected a string");
  return n.Scalar();
}

std::vector<double> as_doubles(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) throw ConfigError(path, line_of(n), "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < n.size(); ++i)
    out.push_back(as_double(n[i], fmt::format("{}[{}]", path, i)));
  return out;
}

void set_double(const YAML::Node& parent, const char* key, const std::string& path, double& out,
                Lines& lines) {
  if (const YAML::Node n = parent[key]) {
    out = as_double(n, join(path, key));
    lines[join(path, key)] = line_of(n);
  }
}

// {start, step, end} or {<list_key>: [...]}; missing grid fields fall back to
// the default grid.
ValuesSpec parse_values(const YAML::Node& n, const std::string& path, const char* list_key,
                        const ValuesSpec& fallback, Lines& lines) {
  require_map(n, path);
  check_keys(n, path, {"start", "step", "end", list_key});
  lines[path] = line_of(n);
  if (const YAML::Node list = n[list_key]) {
    if (n["start"] || n["step"] || n["end"])
      throw ConfigError(path, line_of(n),
                        fmt::format("give either start/step/end or {}, not both", list_key));
    lines[join(path, list_key)] = line_of(list);
    return as_doubles(list, join(path, list_key));
  }
  GridSpec g;
  if (const auto* d = std::get_if<GridSpec>(&fallback)) {
    g = *d;
  } else if (!(n["start"] && n["step"] && n["end"])) {
    throw ConfigError(path, line_of(n), "a grid needs start, step and end");
  }
  set_double(n, "start", path, g.start, lines);
  set_double(n, "step", path, g.step, lines);
  set_double(n, "end", path, g.end, lines);
  return g;
}

OuterSpec parse_outer(const YAML::Node& n, const std::string& path, std::string_view keyword,
                      Lines& lines) {
  lines[path] = line_of(n);
  if (n.IsScalar() && n.Scalar() == keyword) return {OuterMode::EvaluateAtBoundary, 0.0};
  if (n.IsScalar()) {
    try {
      return {OuterMode::Explicit, n.as<double>()};
    } catch (const YAML::BadConversion&) {
    }
  }
  throw ConfigError(path, line_of(n), fmt::format("expected a number or '{}'", keyword));
}

PotentialProfile parse_profile(const YAML::Node& n, const std::string& family,
                               const PotentialProfile& fallback, Lines& lines) {
  const std::string path = "profile";
  auto param = [&](const char* key, double& slot) { set_double(n, key, path, slot, lines); };
  if (family == "linear-step") {
    check_keys(n, path, {"family", "V0", "B", "origin"});
    auto p = std::get<LinearStep>(fallback);
    param("V0", p.V0);
    param("B", p.B);
    param("origin", p.origin);
    return p;
  }
  if (family == "exponential-step") {
    check_keys(n, path, {"family", "V0", "a"});
    auto p = std::get<ExponentialStep>(fallback);
    param("V0", p.V0);
    param("a", p.a);
    return p;
  }
  if (family == "parabolic") {
    check_keys(n, path, {"family", "V0", "B", "x0"});
    auto p = std::get<Parabolic>(fallback);
    param("V0", p.V0);
    param("B", p.B);
    param("x0", p.x0);
    return p;
  }
  if (family == "bell") {
    check_keys(n, path, {"family", "V0", "x0"});
    auto p = std::get<BellShaped>(fallback);
    param("V0", p.V0);
    param("x0", p.x0);
    return p;
  }
  if (family == "eckart") {
    check_keys(n, path, {"family", "A", "B", "x0"});
    auto p = std::get<Eckart>(fallback);
    param("A", p.A);
    param("B", p.B);
    param("x0", p.x0);
    return p;
  }
  check_keys(n, path, {"family", "knots"});
  const YAML::Node k = n["knots"];
  if (!k) return fallback;
  lines["profile.knots"] = line_of(k);
  if (!k.IsSequence()) throw ConfigError("profile.knots", line_of(k), "expected [[x, V], ...]");
  std::vector<Sampled::Knot> knots;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto p = as_doubles(k[i], fmt::format("profile.knots[{}]", i));
    if (p.size() != 2)
      throw ConfigError(fmt::format("profile.knots[{}]", i), line_of(k[i]), "expected [x, V]");
    knots.emplace_back(p[0], p[1]);
  }
  try {
    return Sampled(std::move(knots));
  } catch (const Error& e) {
    throw ConfigError("profile.knots", line_of(k), e.what());
  }
}

Matching parse_matching(const YAML::Node& n, Lines& lines) {
  const auto s = as_string(n, "solver.matching");
  lines["solver.matching"] = line_of(n);
  if (s == "log-derivative") return Matching::LogDerivative;
  if (s == "basis-derivative") return Matching::BasisDerivative;
  throw ConfigError("solver.matching", line_of(n),
                    "expected log-derivative or basis-derivative, got '" + s + "'");
}

void validate_values(const ValuesSpec& spec, const std::string& path, const char* list_key) {
  if (const auto* g = std::get_if<GridSpec>(&spec)) {
    if (!std::isfinite(g->start)) throw ConfigError(path + ".start", 0, "must be finite");
    if (!std::isfinite(g->end)) throw ConfigError(path + ".end", 0, "must be finite");
    if (!(g->step > 0) || !std::isfinite(g->step))
      throw ConfigError(path + ".step", 0, "must be positive");
    if (g->start > g->end) throw ConfigError(path + ".end", 0, "must not be below start");
  } else {
    const auto& v = std::get<std::vector<double>>(spec);
    if (v.empty()) throw ConfigError(join(path, list_key), 0, "must not be empty");
    for (double x : v)
      if (!std::isfinite(x)) throw ConfigError(join(path, list_key), 0, "must be finite");
  }
}

std::string fmt_values(const ValuesSpec& spec, const char* list_key) {
  if (const auto* g = std::get_if<GridSpec>(&spec))
    return fmt::format("{{start: {}, step: {}, end: {}}}", g->start, g->step, g->end);
  return fmt::format("{{{}: [{}]}}", list_key,
                     fmt::join(std::get<std::vector<double>>(spec), ", "));
}

std::string fmt_outer(const OuterSpec& o, std::string_view keyword) {
  return o.mode == OuterMode::EvaluateAtBoundary ? std::string(keyword)
                                                 : fmt::format("{}", o.value);
}

}  // namespace

std::vector<std::string> catalog_families() {
  return {"linear-step", "exponential-step", "parabolic", "bell", "eckart", "sampled"};
}

RunConfig family_defaults(std::string_view family) {
  RunConfig c;
  c.name = std::string(family);
  if (family == "linear-step") {
    // Barrier of height V0 B = 1.5 starting at x = a, zero at a + B.
    c.profile = LinearStep{0.5, 3.0, 1.0};
    c.a = 1.0;
    c.b = 4.0;
    c.basis = GridSpec{0.1, 0.1, 6.0};
    c.lambda_b = 1.0;
    c.lambda_b_tilde = 4.0;
    c.energy = GridSpec{0.2, 0.1, 3.0};
  } else if (family == "exponential-step") {
    c.profile = ExponentialStep{0.5, 1.0};
    c.a = 1.0;
    c.b = 8.0;
    c.basis = GridSpec{0.1, 0.1, 6.0};
    c.lambda_b = 2.0;
    c.lambda_b_tilde = 8.0;
    c.energy = GridSpec{0.05, 0.025, 1.0};
  } else if (family == "parabolic") {
    c.profile = Parabolic{0.5, 1.0, 2.0};
    c.a = 1.0;
    c.b = 3.0;
    c.basis = std::vector<double>{0.1, 0.5, 0.9, 1.3, 2.0, 2.4, 3.0, 3.4, 4.0, 4.4, 5.0, 5.4, 6.0};
    c.lambda_b = 2.0;
    c.lambda_b_tilde = 3.0;
    c.energy = GridSpec{0.025, 0.025, 1.0};
  } else if (family == "bell") {
    c.profile = BellShaped{2.0, 5.0};
    c.a = 1.0;
    c.b = 9.0;
    c.basis = GridSpec{0.1, 0.2, 3.0};
    c.lambda_b = 1.0;
    c.lambda_b_tilde = 9.0;
    c.energy = GridSpec{0.5, 0.25, 4.0};
  } else if (family == "eckart") {
    c.profile = Eckart{1.0, 8.0, 8.0};
    c.a = 2.0;
    c.b = 13.0;
    c.V1 = {OuterMode::EvaluateAtBoundary, 0.0};
    c.V3 = {OuterMode::EvaluateAtBoundary, 0.0};
    c.basis = GridSpec{0.001, 0.2, 3.0};
    c.lambda_b = 2.0;
    c.lambda_b_tilde = 13.0;
    c.energy = GridSpec{0.7, 0.1, 4.0};
  } else if (family == "sampled") {
    c.profile = Sampled({{1.0, 0.0}, {2.0, 0.5}, {3.0, 0.0}});
    c.a = 1.0;
    c.b = 3.0;
    c.basis = GridSpec{0.1, 0.1, 6.0};
    c.lambda_b = 2.0;
    c.lambda_b_tilde = 3.0;
    c.energy = GridSpec{0.05, 0.05, 1.0};
  } else {
    throw ConfigError("profile.family", 0,
                      fmt::format("unknown family '{}' (expected one of: {})", family,
                                  fmt::join(catalog_families(), ", ")));
  }
  return c;
}

std::vector<double> resolve(const ValuesSpec& spec) {
  if (const auto* g = std::get_if<GridSpec>(&spec)) return kappa_grid(g->start, g->step, g->end);
  return std::get<std::vector<double>>(spec);
}

double outer_value(const RunConfig& c, bool left) {
  const OuterSpec& o = left ? c.V1 : c.V3;
  if (o.mode == OuterMode::Explicit) return o.value;
  return evaluate(c.profile, left ? c.a : c.b);
}

ScatteringSetup setup_at(const RunConfig& c, double E) {
  return {c.a, c.b, outer_value(c, true), outer_value(c, false), E};
}

BasisSet basis_of(const RunConfig& c) { return BasisSet(resolve(c.basis), {c.a, c.b}); }

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions o;
  o.lambda_b = c.lambda_b;
  o.lambda_b_tilde = c.lambda_b_tilde;
  o.matching = c.matching;
  o.quad = c.quad;
  return o;
}

void validate(const RunConfig& c) {
  // profile
  auto finite = [](std::initializer_list<std::pair<const char*, double>> ps) {
    for (auto [k, v] : ps)
      if (!std::isfinite(v)) throw ConfigError(std::string("profile.") + k, 0, "must be finite");
  };
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LinearStep>)
          finite({{"V0", p.V0}, {"B", p.B}, {"origin", p.origin}});
        else if constexpr (std::is_same_v<P, ExponentialStep>)
          finite({{"V0", p.V0}, {"a", p.a}});
        else if constexpr (std::is_same_v<P, Parabolic>)
          finite({{"V0", p.V0}, {"B", p.B}, {"x0", p.x0}});
        else if constexpr (std::is_same_v<P, BellShaped>)
          finite({{"V0", p.V0}, {"x0", p.x0}});
        else if constexpr (std::is_same_v<P, Eckart>)
          finite({{"A", p.A}, {"B", p.B}, {"x0", p.x0}});
        else if constexpr (std::is_same_v<P, Sampled>) {
          if (p.x_min() > c.a || p.x_max() < c.b)
            throw ConfigError("profile.knots", 0,
                              fmt::format("knots [{}, {}] must cover the window [{}, {}]",
                                          p.x_min(), p.x_max(), c.a, c.b));
        }
      },
      c.profile);

  // setup
  if (!std::isfinite(c.a)) throw ConfigError("setup.a", 0, "must be finite");
  if (!std::isfinite(c.b) || !(c.a < c.b)) throw ConfigError("setup.b", 0, "must exceed setup.a");
  if (c.V1.mode == OuterMode::Explicit && !std::isfinite(c.V1.value))
    throw ConfigError("setup.V1", 0, "must be finite");
  if (c.V3.mode == OuterMode::Explicit && !std::isfinite(c.V3.value))
    throw ConfigError("setup.V3", 0, "must be finite");

  // basis
  validate_values(c.basis, "basis", "kappas");
  try {
    (void)basis_of(c);
  } catch (const Error& e) {
    throw ConfigError(std::holds_alternative<GridSpec>(c.basis) ? "basis" : "basis.kappas", 0,
                      e.what());
  }

  // solver
  if (!std::isfinite(c.lambda_b)) throw ConfigError("solver.lambda_b", 0, "must be finite");
  if (!std::isfinite(c.lambda_b_tilde) || c.lambda_b_tilde == c.lambda_b)
    throw ConfigError("solver.lambda_b_tilde", 0, "must be finite and differ from lambda_b");

  // energy
  validate_values(c.energy, "energy", "values");
  const double v1 = outer_value(c, true);
  const double v3 = outer_value(c, false);
  const std::string efield =
      std::holds_alternative<GridSpec>(c.energy) ? "energy.start" : "energy.values";
  for (double E : resolve(c.energy)) {
    if (!(E > v1) || !(E > v3))
      throw ConfigError(efield, 0,
                        fmt::format("energy {} must exceed both outer potentials V1={} and "
                                    "V3={} (closed channels are not supported)",
                                    E, v1, v3));
  }

  if (!(c.quad.tol > 0)) throw ConfigError("quadrature.tol", 0, "must be positive");
  if (c.quad.min_panels < 0) throw ConfigError("quadrature.min_panels", 0, "must be >= 0");
  if (!(c.oracle_tol >= 1e-12)) throw ConfigError("oracle.tol", 0, "must be >= 1e-12");
  if (c.workers < 1) throw ConfigError("sweep.workers", 0, "must be >= 1");
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, e.msg);
  }
  if (!root || !root.IsMap()) throw ConfigError("", 1, "document must be a mapping");
  check_keys(root, "", {"name", "profile", "setup", "basis", "solver", "energy", "quadrature",
                        "oracle", "output", "sweep"});

  Lines lines;
  const YAML::Node prof = root["profile"];
  if (!prof) throw ConfigError("profile", 0, "missing required section");
  require_map(prof, "profile");
  if (!prof["family"]) throw ConfigError("profile.family", line_of(prof), "missing");
  const std::string family = as_string(prof["family"], "profile.family");
  lines["profile.family"] = line_of(prof["family"]);

  RunConfig c;
  try {
    c = family_defaults(family);
  } catch (const ConfigError& e) {
    throw ConfigError("profile.family", lines["profile.family"],
                      fmt::format("unknown family '{}'", family));
  }
  c.profile = parse_profile(prof, family, c.profile, lines);

  if (const YAML::Node n = root["name"]) c.name = as_string(n, "name");

  if (const YAML::Node s = root["setup"]) {
    require_map(s, "setup");
    check_keys(s, "setup", {"a", "b", "V1", "V3"});
    set_double(s, "a", "setup", c.a, lines);
    set_double(s, "b", "setup", c.b, lines);
    if (s["V1"]) c.V1 = parse_outer(s["V1"], "setup.V1", "evaluate-at-a", lines);
    if (s["V3"]) c.V3 = parse_outer(s["V3"], "setup.V3", "evaluate-at-b", lines);
  }
  if (const YAML::Node n = root["basis"]) c.basis = parse_values(n, "basis", "kappas", c.basis, lines);
  if (const YAML::Node s = root["solver"]) {
    require_map(s, "solver");
    check_keys(s, "solver", {"lambda_b", "lambda_b_tilde", "matching"});
    set_double(s, "lambda_b", "solver", c.lambda_b, lines);
    set_double(s, "lambda_b_tilde", "solver", c.lambda_b_tilde, lines);
    if (s["matching"]) c.matching = parse_matching(s["matching"], lines);
  }
  if (const YAML::Node n = root["energy"])
    c.energy = parse_values(n, "energy", "values", c.energy, lines);
  if (const YAML::Node q = root["quadrature"]) {
    require_map(q, "quadrature");
    check_keys(q, "quadrature", {"tol", "min_panels", "max_depth"});
    set_double(q, "tol", "quadrature", c.quad.tol, lines);
    if (q["min_panels"]) c.quad.min_panels = q["min_panels"].as<int>();
    if (q["max_depth"]) c.quad.max_depth = q["max_depth"].as<int>();
  }
  if (const YAML::Node o = root["oracle"]) {
    require_map(o, "oracle");
    check_keys(o, "oracle", {"enabled", "tol"});
    if (o["enabled"]) c.oracle = as_bool(o["enabled"], "oracle.enabled");
    set_double(o, "tol", "oracle", c.oracle_tol, lines);
  }
  if (const YAML::Node o = root["output"]) {
    require_map(o, "output");
    check_keys(o, "output", {"dir", "debug_dump"});
    if (o["dir"]) c.out_dir = as_string(o["dir"], "output.dir");
    if (o["debug_dump"]) c.debug_dump = as_bool(o["debug_dump"], "output.debug_dump");
  }
  if (const YAML::Node s = root["sweep"]) {
    require_map(s, "sweep");
    check_keys(s, "sweep", {"workers"});
    if (s["workers"]) {
      lines["sweep.workers"] = line_of(s["workers"]);
      c.workers = static_cast<int>(as_double(s["workers"], "sweep.workers"));
    }
  }

  try {
    validate(c);
  } catch (const ConfigError& e) {
    // Attach the source line of the offending key (or its section).
    int line = 0;
    for (std::string f = e.field(); !f.empty();) {
      if (auto it = lines.find(f); it != lines.end()) {
        line = it->second;
        break;
      }
      const auto dot = f.rfind('.');
      if (dot == std::string::npos) break;
      f.resize(dot);
    }
    std::string msg = e.what();
    if (const auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw ConfigError(e.field(), line, msg);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read configuration file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_yaml(const RunConfig& c) {
  std::string prof = std::visit(
      [](const auto& p) -> std::string {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LinearStep>)
          return fmt::format("{{family: linear-step, V0: {}, B: {}, origin: {}}}", p.V0, p.B,
                             p.origin);
        else if constexpr (std::is_same_v<P, ExponentialStep>)
          return fmt::format("{{family: exponential-step, V0: {}, a: {}}}", p.V0, p.a);
        else if constexpr (std::is_same_v<P, Parabolic>)
          return fmt::format("{{family: parabolic, V0: {}, B: {}, x0: {}}}", p.V0, p.B, p.x0);
        else if constexpr (std::is_same_v<P, BellShaped>)
          return fmt::format("{{family: bell, V0: {}, x0: {}}}", p.V0, p.x0);
        else if constexpr (std::is_same_v<P, Eckart>)
          return fmt::format("{{family: eckart, A: {}, B: {}, x0: {}}}", p.A, p.B, p.x0);
        else {
          std::vector<std::string> ks;
          for (const auto& k : p.knots()) ks.push_back(fmt::format("[{}, {}]", k.first, k.second));
          return fmt::format("{{family: sampled, knots: [{}]}}", fmt::join(ks, ", "));
        }
      },
      c.profile);

  std::string out;
  out += fmt::format("name: {}\n", c.name);
  out += fmt::format("profile: {}\n", prof);
  out += fmt::format("setup: {{a: {}, b: {}, V1: {}, V3: {}}}\n", c.a, c.b,
                     fmt_outer(c.V1, "evaluate-at-a"), fmt_outer(c.V3, "evaluate-at-b"));
  out += fmt::format("basis: {}\n", fmt_values(c.basis, "kappas"));
  out += fmt::format("solver: {{lambda_b: {}, lambda_b_tilde: {}, matching: {}}}\n", c.lambda_b,
                     c.lambda_b_tilde, to_string(c.matching));
  out += fmt::format("energy: {}\n", fmt_values(c.energy, "values"));
  out += fmt::format("quadrature: {{tol: {}}}\n", c.quad.tol);
  out += fmt::format("oracle: {{enabled: {}, tol: {}}}\n", c.oracle, c.oracle_tol);
  out += fmt::format("output: {{dir: {}, debug_dump: {}}}\n", c.out_dir.string(), c.debug_dump);
  out += fmt::format("sweep: {{workers: {}}}\n", c.workers);
  return out;
}

}  // namespace vrm::harness
