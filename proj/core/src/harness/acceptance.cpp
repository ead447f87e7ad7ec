#include "vrm/harness/acceptance.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <random>

#include <Eigen/Eigenvalues>

#include "vrm/error.hpp"
#include "vrm/harness/config.hpp"
#include "vrm/harness/reference.hpp"
#include "vrm/harness/sweep.hpp"
#include "vrm/harness/tables.hpp"
#include "vrm/oracles.hpp"

namespace vrm::harness {

namespace {

const std::vector<std::string> kSweepFamilies{"linear-step", "exponential-step", "parabolic",
                                              "bell", "eckart"};

class Context {
 public:
  explicit Context(const AcceptanceOptions& o) : opts(o) {}

  const SweepResult& default_sweep(const std::string& family) {
    auto it = sweeps_.find(family);
    if (it == sweeps_.end()) {
      RunConfig cfg = family_defaults(family);
      cfg.oracle = true;
      cfg.oracle_tol = opts.oracle_tol;
      cfg.workers = opts.workers;
      it = sweeps_.emplace(family, run_sweep(cfg)).first;
    }
    return it->second;
  }

  TableOptions table_opts() const { return {opts.oracle_tol, opts.workers}; }

  AcceptanceOptions opts;

 private:
  std::map<std::string, SweepResult> sweeps_;
};

struct Check {
  CriterionResult& out;
  void operator()(bool ok, std::string line) {
    out.details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", line));
    out.pass = out.pass && ok;
  }
  void info(std::string line) { out.details.push_back("info " + line); }
};

void add_report(Check& check, const TableReport& rep) {
  for (const auto& n : rep.notes) check.info(n);
  for (const auto& c : rep.cells) {
    std::string line = fmt::format("{} {}: {:.6f} vs {:.6f} ({})", c.row, c.quantity, c.computed,
                                   c.expected, c.reference);
    if (c.informational) {
      check.info(fmt::format("{} |d|={:.2e}", line, c.delta()));
    } else if (std::isfinite(c.tolerance)) {
      check(c.pass, fmt::format("{} |d|={:.2e} <= {:g}", line, c.delta(), c.tolerance));
    } else {
      check(c.pass, line);
    }
  }
}

CriterionResult table_criterion(int n, std::string title, const char* id, Context& ctx) {
  CriterionResult out{n, std::move(title), true, {}};
  Check check{out};
  add_report(check, reproduce_table(id, ctx.table_opts()));
  return out;
}

// Bell barrier against its closed form.
CriterionResult criterion4(Context& ctx) {
  CriterionResult out{4, "bell barrier: oracle and VRM against the closed form", true, {}};
  Check check{out};
  const RunConfig cfg = family_defaults("bell");
  const auto& bell = std::get<BellShaped>(cfg.profile);

  double wide = 0.0;
  for (double E : resolve(cfg.energy)) {
    const ScatteringSetup s{bell.x0 - 10.0, bell.x0 + 10.0, 0.0, 0.0, E};
    const auto r = integrate_reference(cfg.profile, s, ctx.opts.oracle_tol);
    wide = std::max(wide, std::abs(r.T - bell_transmission_exact(E, bell.V0)));
  }
  check(wide <= 1e-6, fmt::format("oracle on [x0-10, x0+10] vs closed form: max |dT| = {:.2e} <= 1e-6", wide));

  const SweepResult& sw = ctx.default_sweep("bell");
  double narrow = 0.0, vrm = 0.0;
  bool all = true;
  for (const auto& r : sw.rows) {
    if (!r.vrm || !r.oracle) {
      all = false;
      continue;
    }
    const double exact = bell_transmission_exact(r.E, bell.V0);
    narrow = std::max(narrow, std::abs(r.oracle->T - exact));
    vrm = std::max(vrm, std::abs(r.vrm->result.T - exact));
  }
  check(all, fmt::format("all {} sweep rows solved", sw.rows.size()));
  check(narrow <= 5e-3, fmt::format("oracle on [{:g}, {:g}] vs closed form: max |dT| = {:.2e} <= 5e-3",
                                    cfg.a, cfg.b, narrow));
  check(vrm <= 0.02, fmt::format("VRM vs closed form over E in [0.5, 4]: max |dT| = {:.2e} <= 0.02", vrm));

  const Quoted& q = reference_data().figures.bell_T_at_2;
  const auto r2 = solve_tunneling(cfg.profile, setup_at(cfg, q.energy), basis_of(cfg), solve_options(cfg));
  check(std::abs(r2.T - q.value) <= 0.03,
        fmt::format("VRM T(E=2) = {:.4f}, quoted {} +- 0.03 (closed form {:.4f})", r2.T, q.value,
                    bell_transmission_exact(2.0, bell.V0)));
  return out;
}

// Eckart barrier against its closed form.
CriterionResult criterion5(Context& ctx) {
  CriterionResult out{5, "Eckart barrier: oracle and VRM against the closed form", true, {}};
  Check check{out};
  RunConfig cfg = family_defaults("eckart");
  const auto& eck = std::get<Eckart>(cfg.profile);

  RunConfig wide_cfg = cfg;
  wide_cfg.a = eck.x0 - 20.0;
  wide_cfg.b = eck.x0 + 20.0;
  double wide = 0.0;
  for (double E : resolve(cfg.energy)) {
    const auto r = integrate_reference(cfg.profile, setup_at(wide_cfg, E), ctx.opts.oracle_tol);
    wide = std::max(wide, std::abs(r.R - eckart_reflection_exact(E, eck.A, eck.B)));
  }
  check(wide <= 1e-6, fmt::format("oracle on [x0-20, x0+20] vs closed-form R: max |dR| = {:.2e} <= 1e-6", wide));

  const SweepResult& sw = ctx.default_sweep("eckart");
  double vrm = 0.0;
  bool all = true;
  for (const auto& r : sw.rows) {
    if (!r.vrm) {
      all = false;
      continue;
    }
    vrm = std::max(vrm, std::abs(r.vrm->result.T - (1.0 - eckart_reflection_exact(r.E, eck.A, eck.B))));
  }
  check(all, fmt::format("all {} sweep rows solved", sw.rows.size()));
  check(vrm <= 0.03, fmt::format("VRM T vs 1 - R_e over E in [0.7, 4]: max |d| = {:.2e} <= 0.03", vrm));

  const Peak top = peak(cfg.profile, {cfg.a, cfg.b});
  check.info(fmt::format("barrier maximum {:.6f} hartree at x = {:.6f}; quoted value {}", top.value,
                         top.x, reference_data().figures.eckart_peak.value));
  const auto r = solve_tunneling(cfg.profile, setup_at(cfg, 2.25), basis_of(cfg), solve_options(cfg));
  check(r.T >= 0.99, fmt::format("VRM T(E=2.25) = {:.5f} >= 0.99", r.T));
  return out;
}

CriterionResult criterion8(Context& ctx) {
  CriterionResult out{8, "average-energy diagnostic within 2% on the default sweeps", true, {}};
  Check check{out};
  const auto& bands = reference_data().figures.e_av_percent;
  for (const auto& family : kSweepFamilies) {
    const SweepResult& sw = ctx.default_sweep(family);
    double lo = INFINITY, hi = 0.0;
    std::size_t solved = 0;
    for (const auto& r : sw.rows) {
      if (!r.vrm) continue;
      ++solved;
      const double pct = 100.0 * std::abs(r.vrm->result.E_av - r.E) / r.E;
      lo = std::min(lo, pct);
      hi = std::max(hi, pct);
    }
    check(solved == sw.rows.size() && hi <= 2.0,
          fmt::format("{}: {}/{} rows, |E_av - E|/E in [{:.3f}%, {:.3f}%] <= 2%", family, solved,
                      sw.rows.size(), lo, hi));
    if (auto it = bands.find(family); it != bands.end())
      check.info(fmt::format("{}: quoted band [{}%, {}%] ({})", family, it->second.min_percent,
                             it->second.max_percent, it->second.source));
  }
  return out;
}

void unitarity(Check& check, Context& ctx) {
  double orc = 0.0, vrm = 0.0;
  std::size_t rows = 0, missing = 0;
  for (const auto& family : kSweepFamilies) {
    for (const auto& r : ctx.default_sweep(family).rows) {
      ++rows;
      if (!r.vrm || !r.oracle) {
        ++missing;
        continue;
      }
      orc = std::max(orc, r.oracle->unitarity_defect);
      vrm = std::max(vrm, r.vrm->result.unitarity_defect);
    }
  }
  check(missing == 0, fmt::format("{} default sweep rows, {} failed", rows, missing));
  check(orc <= 1e-8, fmt::format("oracle max |T+R-1| = {:.2e} <= 1e-8", orc));
  check(vrm <= 5e-3, fmt::format("VRM max |T+R-1| = {:.2e} <= 5e-3", vrm));
}

void lambda_invariance(Check& check) {
  const ReferenceTable& t2 = reference_data().table("table2");
  RunConfig cfg = family_defaults(t2.profile);
  double worst = 0.0;
  for (double E : t2.energies) {
    const auto setup = setup_at(cfg, E);
    SolveOptions o = solve_options(cfg);
    const double T1 = solve_tunneling(cfg.profile, setup, basis_of(cfg), o).T;
    o.lambda_b = 1.0;
    o.lambda_b_tilde = 4.0;
    const double T2 = solve_tunneling(cfg.profile, setup, basis_of(cfg), o).T;
    worst = std::max(worst, std::abs(T1 - T2));
  }
  check(worst <= 1e-3, fmt::format("lambda pair (2,8) vs (1,4) on the table2 energies: max |dT| = {:.2e} <= 1e-3", worst));
}

void normalization_invariance(Check& check) {
  const RunConfig cfg = family_defaults("exponential-step");
  const ScatteringSetup setup = setup_at(cfg, 0.25);
  const BasisSet basis = basis_of(cfg);
  const auto prob = assemble_problem(basis, cfg.profile, setup, cfg.quad);
  const auto [k1, k3] = wavenumbers(setup);
  const InnerSolution s1 = inner_solution(prob.system, cfg.lambda_b);
  const InnerSolution s2 = inner_solution(prob.system, cfg.lambda_b_tilde);
  auto coefficients = [&](double c1, double c2) {
    InnerSolution a = s1, b = s2;
    a.C *= c1;
    b.C *= c2;
    const auto u = match_amplitudes(boundary_values(a, prob.system, cfg.matching), setup);
    const auto v = match_amplitudes(boundary_values(b, prob.system, cfg.matching), setup);
    const auto rt = reflection_transmission(u, v, k1, k3);
    return std::array{rt.T, rt.R, average_energy(a.C, prob.energy)};
  };
  const auto base = coefficients(1.0, 1.0);
  std::array<double, 3> worst{};
  for (auto [c1, c2] : {std::pair{7.3, 1.0}, {1.0, -0.01}, {-250.0, 3e-3}}) {
    const auto x = coefficients(c1, c2);
    for (int i = 0; i < 3; ++i) worst[i] = std::max(worst[i], std::abs(x[i] - base[i]) / std::max(1.0, std::abs(base[i])));
  }
  check.info(fmt::format("T {:.2e} R {:.2e} E_av {:.2e}", worst[0], worst[1], worst[2]));
  const double w = *std::max_element(worst.begin(), worst.end());
  check(w <= 1e-12, fmt::format("rescaling C changes T, R, E_av by at most {:.2e} <= 1e-12", w));
}

void rank_one_vs_eigensolver(Check& check) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  constexpr int n = 6;
  double worst_lambda = 0.0, worst_vec = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = u(rng);
    Eigen::VectorXd va(n), vb(n);
    for (int i = 0; i < n; ++i) {
      va(i) = u(rng);
      vb(i) = u(rng);
    }
    const double lambda_b = 2.0;
    const auto sys = make_system(A, va, vb);
    const InnerSolution sol = inner_solution(sys, lambda_b);

    const Eigen::MatrixXd M = A + lambda_b * vb * vb.transpose();
    const Eigen::MatrixXd D = va * va.transpose();
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(M, D);
    Eigen::Index k = 0;
    ges.betas().cwiseAbs().maxCoeff(&k);
    const double lambda = (ges.alphas()(k) / ges.betas()(k)).real();
    Eigen::VectorXcd v = ges.eigenvectors().col(k);
    v /= va.cast<std::complex<double>>().dot(v);  // v_a^T v = 1, as C
    worst_lambda = std::max(worst_lambda, std::abs(lambda - sol.lambda_a) / std::max(1.0, std::abs(lambda)));
    worst_vec = std::max(worst_vec, (v - sol.C.cast<std::complex<double>>()).norm() / std::max(1.0, sol.C.norm()));
  }
  check(worst_lambda <= 1e-8 && worst_vec <= 1e-8,
        fmt::format("50 random N=6 systems vs generalized eigensolver: lambda(a) {:.2e}, C {:.2e} <= 1e-8",
                    worst_lambda, worst_vec));
}

void matched_pairs(Check& check, double oracle_tol) {
  struct Case {
    const char* name;
    double V, E;
  };
  double worst = 0.0;
  for (const Case c : {Case{"V=0", 0.0, 0.3}, Case{"barrier V=0.8", 0.8, 0.3}, Case{"V=0.8 above", 0.8, 1.1}}) {
    const ScatteringSetup setup{0.0, 2.0, 0.0, 0.0, c.E};
    const PotentialProfile flat = Sampled({{0.0, c.V}, {2.0, c.V}});
    const SolutionPair pair = c.E > c.V ? plane_wave_pair(std::sqrt(2.0 * (c.E - c.V)))
                                        : evanescent_pair(std::sqrt(2.0 * (c.V - c.E)));
    const auto exact = matched_pair_transmission(pair, setup);
    const auto ref = integrate_reference(flat, setup, oracle_tol);
    const double d = std::max(std::abs(exact.T - ref.T), std::abs(exact.R - ref.R));
    worst = std::max(worst, d);
    check.info(fmt::format("{} E={}: pair T={:.10f}, oracle T={:.10f}", c.name, c.E, exact.T, ref.T));
  }
  check(worst <= 1e-8, fmt::format("matched pairs vs oracle: max |dT|,|dR| = {:.2e} <= 1e-8", worst));
}

CriterionResult criterion9(Context& ctx) {
  CriterionResult out{9, "property suite", true, {}};
  Check check{out};
  unitarity(check, ctx);
  lambda_invariance(check);
  normalization_invariance(check);
  rank_one_vs_eigensolver(check);
  matched_pairs(check, ctx.opts.oracle_tol);
  return out;
}

CriterionResult run(int n, Context& ctx) {
  try {
    switch (n) {
      case 1:
        return table_criterion(1, "exponential step: table2 VRM and exact columns", "table2", ctx);
      case 2:
        return table_criterion(2, "parabolic barrier: table3 VRM and TM columns", "table3", ctx);
      case 3:
        return table_criterion(3, "linear step: VRM vs oracle and T decreasing in B (table1)", "table1", ctx);
      case 4:
        return criterion4(ctx);
      case 5:
        return criterion5(ctx);
      case 6: {
        CriterionResult out{6, "R = T crossing energies", true, {}};
        Check check{out};
        add_report(check, crossing_report(ctx.table_opts()));
        return out;
      }
      case 7: {
        CriterionResult out{7, "over-barrier transmission at 1.01 V_max", true, {}};
        Check check{out};
        add_report(check, over_barrier_report(ctx.table_opts()));
        return out;
      }
      case 8:
        return criterion8(ctx);
      case 9:
        return criterion9(ctx);
      default:
        break;
    }
  } catch (const std::exception& e) {
    return CriterionResult{n, "criterion " + std::to_string(n), false, {std::string("error: ") + e.what()}};
  }
  throw Error(fmt::format("no acceptance criterion {}", n));
}

}  // namespace

CriterionResult run_criterion(int number, const AcceptanceOptions& opts) {
  Context ctx(opts);
  return run(number, ctx);
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  Context ctx(opts);
  std::vector<CriterionResult> out;
  for (int n = 1; n <= acceptance_count; ++n) out.push_back(run(n, ctx));
  return out;
}

void print_criterion(std::ostream& os, const CriterionResult& r, bool verbose) {
  os << fmt::format("criterion {}: {}  {}\n", r.number, r.pass ? "PASS" : "FAIL", r.title);
  if (verbose)
    for (const auto& d : r.details) os << "    " << d << '\n';
}

}  // namespace vrm::harness
