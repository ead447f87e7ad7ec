#include "vrm/solver.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "vrm/error.hpp"

namespace vrm {
namespace {

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

std::pair<Complex, Complex> match_at(double psi, double dpsi, double k, double x) {
  const Complex ik(0.0, k);
  const Complex p = 0.5 * (psi + dpsi / ik);
  const Complex m = 0.5 * (psi - dpsi / ik);
  return {p * std::exp(-ik * x), m * std::exp(ik * x)};
}

std::string fmt_lambda(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Matching m) noexcept {
  switch (m) {
    case Matching::LogDerivative: return "log-derivative";
    case Matching::BasisDerivative: return "basis-derivative";
  }
  return "unknown";
}

InnerSolution inner_solution(const VariationalSystem& sys, double lambda_b,
                             const InnerSolveOptions& opts) {
  const auto n = sys.A.rows();
  if (sys.A.cols() != n || sys.v_a.size() != n || sys.v_b.size() != n)
    throw PreconditionError("inner_solution: inconsistent system dimensions");
  if (!std::isfinite(lambda_b)) throw PreconditionError("inner_solution: lambda(b) not finite");

  // (X^T M X) y = X^T v_a, w = X y
  const Eigen::MatrixXd& X = sys.independent_span;
  const Eigen::MatrixXd XtA = X.transpose() * sys.A * X;
  const Eigen::VectorXd Xtb = X.transpose() * sys.v_b;

  double lam = lambda_b;
  double cond = 0.0;
  int retries = 0;
  Eigen::MatrixXd Mr;
  for (;; ++retries) {
    Mr = XtA;
    Mr.noalias() += lam * Xtb * Xtb.transpose();
    cond = condition_number(Mr);
    if (cond <= opts.resonance_threshold) break;
    if (retries >= opts.max_retries) {
      throw ResonanceError("A + lambda(b) Delta^b is singular to working precision (condition " +
                               fmt_lambda(cond) + " at lambda(b)=" + fmt_lambda(lam) +
                               "); choose a different lambda(b)",
                           lam);
    }
    lam += opts.lambda_perturbation;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(Mr);
  const Eigen::VectorXd w = X * lu.solve(X.transpose() * sys.v_a);

  Eigen::MatrixXd M = sys.A;
  M.noalias() += lam * sys.v_b * sys.v_b.transpose();
  const double scale = M.cwiseAbs().maxCoeff() * w.cwiseAbs().maxCoeff() +
                       sys.v_a.cwiseAbs().maxCoeff();
  const double residual = (M * w - sys.v_a).cwiseAbs().maxCoeff();
  if (!w.allFinite() || residual > 1e-10 * scale) {
    throw NumericalError("inner_solution: linear solve residual " + fmt_lambda(residual) +
                             " exceeds 1e-10 of system scale",
                         residual);
  }

  const double s = sys.v_a.dot(w);
  if (s == 0.0 || !std::isfinite(s)) {
    throw DegenerateError("inner_solution: v_a^T w vanishes, psi(a) = 0 for every admissible "
                          "solution at lambda(b)=" + fmt_lambda(lam));
  }

  InnerSolution out;
  out.lambda_b = lam;
  out.lambda_a = 1.0 / s;
  out.cond_indicator = cond;
  out.retries = retries;
  out.C = w / s;
  if (!out.C.allFinite() || !std::isfinite(out.lambda_a)) {
    out.C = w.normalized();
    if (!std::isfinite(out.lambda_a))
      throw DegenerateError("inner_solution: lambda(a) overflows (v_a^T w underflow)");
  }
  return out;
}

BoundaryValues boundary_values(const InnerSolution& sol, const VariationalSystem& sys,
                               Matching matching) {
  BoundaryValues bv;
  bv.psi_a = sys.v_a.dot(sol.C);
  bv.psi_b = sys.v_b.dot(sol.C);
  if (bv.psi_a == 0.0 || bv.psi_b == 0.0)
    throw DegenerateError("inner solution vanishes at a boundary; logarithmic derivative undefined");
  switch (matching) {
    case Matching::LogDerivative:
      bv.dpsi_a = sol.lambda_a * bv.psi_a;
      bv.dpsi_b = sol.lambda_b * bv.psi_b;
      break;
    case Matching::BasisDerivative:
      bv.dpsi_a = sys.dv_a.dot(sol.C);
      bv.dpsi_b = sys.dv_b.dot(sol.C);
      break;
  }
  return bv;
}

ChannelAmplitudes match_amplitudes(const BoundaryValues& bv, const ScatteringSetup& setup) {
  const auto [k1, k3] = wavenumbers(setup);
  ChannelAmplitudes out;
  std::tie(out.a1, out.b1) = match_at(bv.psi_a, bv.dpsi_a, k1, setup.a);
  std::tie(out.a3, out.b3) = match_at(bv.psi_b, bv.dpsi_b, k3, setup.b);
  return out;
}

ScatteringCoefficients reflection_transmission(const ChannelAmplitudes& u,
                                               const ChannelAmplitudes& v, double k1,
                                               double k3) {
  if (!(k1 > 0) || !(k3 > 0))
    throw PreconditionError("reflection_transmission: wavenumbers must be positive");
  const Complex D = u.a1 * v.b3 - u.b3 * v.a1;
  const double scale = std::abs(u.a1) * std::abs(v.b3) + std::abs(u.b3) * std::abs(v.a1);
  if (!(std::abs(D) > 1e-14 * scale)) {
    throw DegenerateError("reflection_transmission: the two inner solutions are linearly "
                          "dependent at the boundaries; use a different second lambda(b)");
  }
  const Complex rho = (u.b1 * v.b3 - u.b3 * v.b1) / D;
  const Complex tau = (u.a3 * v.b3 - u.b3 * v.a3) / D;
  return {std::norm(rho), (k3 / k1) * std::norm(tau)};
}

double average_energy(const Eigen::VectorXd& C, const EnergyMatrices& em) {
  const double norm = C.dot(em.Rm * C);
  if (!(norm > 0.0)) throw DegenerateError("average_energy: C^T Rm C is not positive");
  return C.dot(em.P * C) / norm;
}

TunnelingDetail solve_tunneling_detail(const PotentialProfile& profile,
                                       const ScatteringSetup& setup, const BasisSet& basis,
                                       const SolveOptions& opts) {
  if (opts.lambda_b == opts.lambda_b_tilde)
    throw PreconditionError("solve_tunneling: lambda(b) and the second lambda(b) must differ");
  const auto [k1, k3] = wavenumbers(setup);

  AssembledProblem prob;
  try {
    prob = assemble_problem(basis, profile, setup, opts.quad);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("assembly: ") + e.what(), e.residual());
  }

  auto solve_one = [&](double lam) {
    const std::string ctx = "lambda(b)=" + fmt_lambda(lam) + ": ";
    try {
      InnerSolution s = inner_solution(prob.system, lam, opts.inner);
      ChannelAmplitudes a =
          match_amplitudes(boundary_values(s, prob.system, opts.matching), setup);
      return std::pair{std::move(s), a};
    } catch (const ResonanceError& e) {
      throw ResonanceError(ctx + "inner solve: " + e.what(), e.last_lambda_b());
    } catch (const NumericalError& e) {
      throw NumericalError(ctx + "inner solve: " + e.what(), e.residual());
    } catch (const DegenerateError& e) {
      throw DegenerateError(ctx + "inner solve: " + e.what());
    }
  };

  TunnelingDetail d;
  std::tie(d.first, d.amps) = solve_one(opts.lambda_b);
  std::tie(d.second, d.amps_tilde) = solve_one(opts.lambda_b_tilde);

  ScatteringCoefficients rt;
  try {
    rt = reflection_transmission(d.amps, d.amps_tilde, k1, k3);
  } catch (const DegenerateError& e) {
    throw DegenerateError("lambda(b)=" + fmt_lambda(d.first.lambda_b) + "/" +
                          fmt_lambda(d.second.lambda_b) + ": " + e.what());
  }

  auto& r = d.result;
  r.E = setup.E;
  r.T = rt.T;
  r.R = rt.R;
  r.E_av = average_energy(d.first.C, prob.energy);
  r.unitarity_defect = std::abs(rt.T + rt.R - 1.0);
  r.cond_indicator = std::max(d.first.cond_indicator, d.second.cond_indicator);
  r.lambda_b = d.first.lambda_b;
  r.lambda_b_tilde = d.second.lambda_b;
  return d;
}

TunnelingResult solve_tunneling(const PotentialProfile& profile, const ScatteringSetup& setup,
                                const BasisSet& basis, const SolveOptions& opts) {
  return solve_tunneling_detail(profile, setup, basis, opts).result;
}

void write_debug_header(std::ostream& os, std::size_t basis_size) {
  os << "profile,E,lambda_b,lambda_a,a1_re,a1_im,b1_re,b1_im,a3_re,a3_im,b3_re,b3_im";
  for (std::size_t i = 0; i < basis_size; ++i) os << ",c_" << i;
  os << '\n';
}

void write_debug_rows(std::ostream& os, std::string_view profile_name,
                      const TunnelingDetail& d) {
  auto row = [&](const InnerSolution& s, const ChannelAmplitudes& a) {
    char buf[32];
    auto num = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    };
    os << profile_name;
    num(d.result.E);
    num(s.lambda_b);
    num(s.lambda_a);
    for (const Complex& c : {a.a1, a.b1, a.a3, a.b3}) {
      num(c.real());
      num(c.imag());
    }
    for (Eigen::Index i = 0; i < s.C.size(); ++i) num(s.C(i));
    os << '\n';
  };
  row(d.first, d.amps);
  row(d.second, d.amps_tilde);
}

}  // namespace vrm
