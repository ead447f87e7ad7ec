#pragma once

// Cosine basis chi_i(x) = cos(kappa_i x) on [a, b] and the variational
// matrices built from it.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "vrm/potentials.hpp"
#include "vrm/quadrature.hpp"

namespace vrm {

/// Inclusive arithmetic grid start, start+step, ... up to end. `end` itself is
/// included when it lies within 1e-12 of a grid point. Throws
/// PreconditionError for step <= 0 or start > end.
std::vector<double> kappa_grid(double start, double step, double end);

class BasisSet {
 public:
  /// Throws PreconditionError unless there are at least two wavenumbers,
  /// all finite and >= 0, strictly increasing, and domain.a < domain.b.
  BasisSet(std::vector<double> kappas, Window domain);

  std::size_t size() const noexcept { return kappas_.size(); }
  const std::vector<double>& kappas() const noexcept { return kappas_; }
  Window domain() const noexcept { return domain_; }
  double kappa_max() const noexcept { return kappas_.back(); }

 private:
  std::vector<double> kappas_;
  Window domain_;
};

struct BasisValue {
  double value = 0.0;       ///< cos(kappa_i x)
  double derivative = 0.0;  ///< -kappa_i sin(kappa_i x)
};

/// Zero-based index. Throws PreconditionError when i >= basis.size().
BasisValue basis_eval(const BasisSet& basis, std::size_t i, double x);

/// A and the boundary vectors. Delta^a = v_a v_a^T and Delta^b = v_b v_b^T are
/// never formed. dv_a, dv_b hold chi_i'(a), chi_i'(b).
struct VariationalSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd v_a;
  Eigen::VectorXd v_b;
  Eigen::VectorXd dv_a;
  Eigen::VectorXd dv_b;
  /// Columns span the numerically independent part of the basis in the
  /// overlap metric (canonical orthogonalization). The boundary solve is
  /// carried out on this span.
  Eigen::MatrixXd independent_span;
};

/// Builds a system from raw parts; independent_span is the identity and
/// dv_a / dv_b are zero.
VariationalSystem make_system(Eigen::MatrixXd A, Eigen::VectorXd v_a, Eigen::VectorXd v_b);

struct EnergyMatrices {
  Eigen::MatrixXd P;   ///< int chi_i [-(1/2) chi_j'' + V chi_j]
  Eigen::MatrixXd Rm;  ///< int chi_i chi_j
};

/// int_a^b chi_i chi_j dx, closed form.
Eigen::MatrixXd overlap_matrix(const BasisSet& basis);
/// int_a^b chi_i' chi_j' dx, closed form.
Eigen::MatrixXd derivative_overlap_matrix(const BasisSet& basis);
/// int_a^b chi_i V chi_j dx by adaptive composite Gauss-Legendre.
Eigen::MatrixXd potential_matrix(const BasisSet& basis, const PotentialProfile& profile,
                                 const QuadratureSpec& quad, QuadratureReport* report = nullptr);

/// A_ij = -int chi_i' chi_j' + 2E int chi_i chi_j - 2 int chi_i V chi_j with
/// E = setup.E. Precondition: basis.domain() equals [setup.a, setup.b].
VariationalSystem assemble_system(const BasisSet& basis, const PotentialProfile& profile,
                                  const ScatteringSetup& setup, const QuadratureSpec& quad);

EnergyMatrices assemble_energy_matrices(const BasisSet& basis, const PotentialProfile& profile,
                                        const ScatteringSetup& setup,
                                        const QuadratureSpec& quad);

/// Both of the above from a single potential quadrature.
struct AssembledProblem {
  VariationalSystem system;
  EnergyMatrices energy;
};
AssembledProblem assemble_problem(const BasisSet& basis, const PotentialProfile& profile,
                                  const ScatteringSetup& setup, const QuadratureSpec& quad);

/// Columns U_k / sqrt(s_k) for overlap eigenpairs with s_k > rel_cutoff * max s.
Eigen::MatrixXd canonical_orthogonalizer(const Eigen::MatrixXd& overlap,
                                         double rel_cutoff = 1e-15);

}  // namespace vrm
