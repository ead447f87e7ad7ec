#include "vrm/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vrm/error.hpp"

namespace vrm {
namespace {

// int_a^b cos(w x) dx, written as L cos(w m) sinc(w L / 2) so that small |w|
// does not cancel.
double cos_integral(double w, double a, double b) {
  const double L = b - a;
  const double m = 0.5 * (a + b);
  const double h = 0.5 * w * L;
  const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return L * std::cos(w * m) * sinc;
}

void check_domain(const BasisSet& basis, const ScatteringSetup& setup) {
  const Window d = basis.domain();
  if (d.a != setup.a || d.b != setup.b) {
    throw PreconditionError("basis domain [" + std::to_string(d.a) + ", " +
                            std::to_string(d.b) + "] differs from scattering window [" +
                            std::to_string(setup.a) + ", " + std::to_string(setup.b) + "]");
  }
}

std::vector<double> initial_edges(const BasisSet& basis, const PotentialProfile& profile,
                                  const QuadratureSpec& quad) {
  const Window d = basis.domain();
  const double L = d.b - d.a;
  const auto& rule = gauss_legendre16();
  int panels = quad.min_panels;
  if (panels <= 0) {
    // chi_i chi_j oscillates with frequency up to 2 kappa_max; keep at least
    // 8 nodes per period of that product.
    const double w = std::max(2.0 * basis.kappa_max(), 1e-12);
    const double period = 2.0 * std::numbers::pi / w;
    const double h = static_cast<double>(rule.nodes.size()) * period / 8.0;
    panels = std::max(1, static_cast<int>(std::ceil(L / h)));
  }
  std::vector<double> edges;
  for (int i = 0; i <= panels; ++i) edges.push_back(d.a + L * i / panels);
  for (double x : breakpoints(profile)) {
    if (x > d.a && x < d.b) edges.push_back(x);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

std::vector<double> kappa_grid(double start, double step, double end) {
  if (!(step > 0) || !std::isfinite(step))
    throw PreconditionError("kappa_grid: step must be positive");
  if (!std::isfinite(start) || !std::isfinite(end) || start > end)
    throw PreconditionError("kappa_grid: requires start <= end");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > end + 1e-12) break;
    out.push_back(std::abs(v - end) <= 1e-12 ? end : v);
  }
  return out;
}

BasisSet::BasisSet(std::vector<double> kappas, Window domain)
    : kappas_(std::move(kappas)), domain_(domain) {
  if (kappas_.size() < 2) throw PreconditionError("basis needs at least two functions");
  if (!(domain_.a < domain_.b)) throw PreconditionError("basis domain requires a < b");
  for (std::size_t i = 0; i < kappas_.size(); ++i) {
    if (!std::isfinite(kappas_[i]) || kappas_[i] < 0)
      throw PreconditionError("basis wavenumber " + std::to_string(i) +
                              " must be finite and >= 0");
    if (i > 0 && !(kappas_[i] > kappas_[i - 1]))
      throw PreconditionError("basis wavenumbers must be strictly increasing (duplicate or "
                              "out of order at index " + std::to_string(i) + ")");
  }
}

BasisValue basis_eval(const BasisSet& basis, std::size_t i, double x) {
  if (i >= basis.size())
    throw PreconditionError("basis index " + std::to_string(i) + " out of range (size " +
                            std::to_string(basis.size()) + ")");
  const double k = basis.kappas()[i];
  return {std::cos(k * x), -k * std::sin(k * x)};
}

VariationalSystem make_system(Eigen::MatrixXd A, Eigen::VectorXd v_a, Eigen::VectorXd v_b) {
  const auto n = A.rows();
  VariationalSystem s;
  s.A = std::move(A);
  s.v_a = std::move(v_a);
  s.v_b = std::move(v_b);
  s.dv_a = Eigen::VectorXd::Zero(n);
  s.dv_b = Eigen::VectorXd::Zero(n);
  s.independent_span = Eigen::MatrixXd::Identity(n, n);
  return s;
}

Eigen::MatrixXd overlap_matrix(const BasisSet& basis) {
  const auto& k = basis.kappas();
  const auto [a, b] = basis.domain();
  const auto n = static_cast<Eigen::Index>(k.size());
  Eigen::MatrixXd R(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = 0.5 * (cos_integral(k[i] - k[j], a, b) + cos_integral(k[i] + k[j], a, b));
      R(i, j) = R(j, i) = v;
    }
  }
  return R;
}

Eigen::MatrixXd derivative_overlap_matrix(const BasisSet& basis) {
  const auto& k = basis.kappas();
  const auto [a, b] = basis.domain();
  const auto n = static_cast<Eigen::Index>(k.size());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double ss =
          0.5 * (cos_integral(k[i] - k[j], a, b) - cos_integral(k[i] + k[j], a, b));
      K(i, j) = K(j, i) = k[i] * k[j] * ss;
    }
  }
  return K;
}

Eigen::MatrixXd potential_matrix(const BasisSet& basis, const PotentialProfile& profile,
                                 const QuadratureSpec& quad, QuadratureReport* report) {
  const auto& rule = gauss_legendre16();
  const auto q = static_cast<Eigen::Index>(rule.nodes.size());
  const Eigen::Map<const Eigen::ArrayXd> kap(basis.kappas().data(),
                                             static_cast<Eigen::Index>(basis.size()));

  PanelIntegral panel = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Eigen::MatrixXd C(q, kap.size());
    Eigen::VectorXd wv(q);
    for (Eigen::Index n = 0; n < q; ++n) {
      const double x = mid + half * rule.nodes[static_cast<std::size_t>(n)];
      C.row(n) = (kap * x).cos().matrix().transpose();
      wv(n) = half * rule.weights[static_cast<std::size_t>(n)] * evaluate(profile, x);
    }
    Eigen::MatrixXd out = C.transpose() * wv.asDiagonal() * C;
    return out;
  };

  const auto edges = initial_edges(basis, profile, quad);
  Eigen::MatrixXd V = integrate_panels(panel, edges, quad, report);
  // Exact symmetry: the integrand is symmetric, the product above only up to
  // rounding.
  Eigen::MatrixXd sym = 0.5 * (V + V.transpose());
  return sym;
}

AssembledProblem assemble_problem(const BasisSet& basis, const PotentialProfile& profile,
                                  const ScatteringSetup& setup, const QuadratureSpec& quad) {
  check_domain(basis, setup);
  const Eigen::MatrixXd Rm = overlap_matrix(basis);
  const Eigen::MatrixXd K = derivative_overlap_matrix(basis);
  const Eigen::MatrixXd V = potential_matrix(basis, profile, quad);
  const auto n = static_cast<Eigen::Index>(basis.size());

  AssembledProblem out;
  auto& sys = out.system;
  sys.A = -K + 2.0 * setup.E * Rm - 2.0 * V;
  sys.v_a.resize(n);
  sys.v_b.resize(n);
  sys.dv_a.resize(n);
  sys.dv_b.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ea = basis_eval(basis, static_cast<std::size_t>(i), setup.a);
    const auto eb = basis_eval(basis, static_cast<std::size_t>(i), setup.b);
    sys.v_a(i) = ea.value;
    sys.dv_a(i) = ea.derivative;
    sys.v_b(i) = eb.value;
    sys.dv_b(i) = eb.derivative;
  }
  sys.independent_span = canonical_orthogonalizer(Rm);

  // -(1/2) chi_j'' = (kappa_j^2 / 2) chi_j.
  const Eigen::Map<const Eigen::VectorXd> kap(basis.kappas().data(), n);
  const Eigen::VectorXd half_k2 = 0.5 * kap.array().square().matrix();
  out.energy.P = Rm * half_k2.asDiagonal();
  out.energy.P += V;
  out.energy.Rm = Rm;
  return out;
}

VariationalSystem assemble_system(const BasisSet& basis, const PotentialProfile& profile,
                                  const ScatteringSetup& setup, const QuadratureSpec& quad) {
  return assemble_problem(basis, profile, setup, quad).system;
}

EnergyMatrices assemble_energy_matrices(const BasisSet& basis, const PotentialProfile& profile,
                                        const ScatteringSetup& setup,
                                        const QuadratureSpec& quad) {
  return assemble_problem(basis, profile, setup, quad).energy;
}

Eigen::MatrixXd canonical_orthogonalizer(const Eigen::MatrixXd& overlap, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(overlap);
  if (es.info() != Eigen::Success)
    throw NumericalError("overlap eigendecomposition failed", 0.0);
  const Eigen::VectorXd& s = es.eigenvalues();
  const double smax = s.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_cutoff * smax) keep.push_back(k);
  }
  Eigen::MatrixXd X(overlap.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto k = keep[c];
    X.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(k) / std::sqrt(s(k));
  }
  return X;
}

}  // namespace vrm
