#pragma once

// Variational R-matrix solve: rank-one boundary eigenproblem, matching to
// plane waves in the outer regions, reflection/transmission and the
// average-energy diagnostic.

#include <complex>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "vrm/basis.hpp"
#include "vrm/potentials.hpp"
#include "vrm/quadrature.hpp"

namespace vrm {

using Complex = std::complex<double>;

/// How psi'(a), psi'(b) are taken when matching to the outer plane waves.
enum class Matching {
  /// psi' = lambda psi at both boundaries (the imposed lambda(b) and the
  /// computed lambda(a)). Exactly flux conserving.
  LogDerivative,
  /// psi' = sum_i c_i chi_i'(x) from the expansion itself.
  BasisDerivative,
};

std::string_view to_string(Matching m) noexcept;

/// Coefficients C of one inner-region solution with its boundary
/// logarithmic derivatives.
struct InnerSolution {
  Eigen::VectorXd C;
  double lambda_b = 0.0;        ///< lambda(b) actually used (after any perturbation)
  double lambda_a = 0.0;
  double cond_indicator = 0.0;  ///< 2-norm condition of X^T M X
  int retries = 0;              ///< lambda(b) perturbations applied
};

struct InnerSolveOptions {
  double resonance_threshold = 1e12;
  double lambda_perturbation = 0.5;
  int max_retries = 3;
};

/// Solves [A + lambda_b v_b v_b^T] C = lambda_a v_a (v_a^T C) through one
/// linear solve M w = v_a: lambda_a = 1 / (v_a^T w), C = w / (v_a^T w).
/// The solve runs on X = sys.independent_span: w = X y, X^T M X y = X^T v_a.
/// Retries with lambda_b + perturbation while the condition indicator exceeds
/// the threshold; then throws ResonanceError. Throws DegenerateError when
/// v_a^T w vanishes and NumericalError when the solve residual exceeds 1e-10
/// of the system scale.
InnerSolution inner_solution(const VariationalSystem& sys, double lambda_b,
                             const InnerSolveOptions& opts = {});

/// Wave function values and derivatives of one real solution at a and b.
struct BoundaryValues {
  double psi_a = 0.0;
  double dpsi_a = 0.0;
  double psi_b = 0.0;
  double dpsi_b = 0.0;
};

BoundaryValues boundary_values(const InnerSolution& sol, const VariationalSystem& sys,
                               Matching matching);

/// psi_1 = a1 e^{i k1 x} + b1 e^{-i k1 x} (x < a),
/// psi_3 = a3 e^{i k3 x} + b3 e^{-i k3 x} (x > b).
struct ChannelAmplitudes {
  Complex a1, b1, a3, b3;
};

/// Continuity of psi and psi' at a and at b. Requires open channels.
ChannelAmplitudes match_amplitudes(const BoundaryValues& bv, const ScatteringSetup& setup);

struct ScatteringCoefficients {
  double R = 0.0;
  double T = 0.0;
};

/// Combines two independent solutions into the unit-incidence, no-return
/// state: B a1 + B~ a1~ = 1, B b3 + B~ b3~ = 0. Then
///   R = |(b1 b3~ - b3 b1~) / (a1 b3~ - b3 a1~)|^2,
///   T = (k3/k1) |(a3 b3~ - b3 a3~) / (a1 b3~ - b3 a1~)|^2.
/// Throws DegenerateError when the denominator vanishes relative to the
/// amplitude scale.
ScatteringCoefficients reflection_transmission(const ChannelAmplitudes& amps,
                                               const ChannelAmplitudes& amps_tilde, double k1,
                                               double k3);

/// (C^T P C) / (C^T Rm C). Throws DegenerateError if C^T Rm C <= 0.
double average_energy(const Eigen::VectorXd& C, const EnergyMatrices& em);

struct SolveOptions {
  double lambda_b = 2.0;
  double lambda_b_tilde = 8.0;
  Matching matching = Matching::LogDerivative;
  QuadratureSpec quad{};
  InnerSolveOptions inner{};
};

struct TunnelingResult {
  double E = 0.0;
  double T = 0.0;
  double R = 0.0;
  double E_av = 0.0;
  double unitarity_defect = 0.0;  ///< |T + R - 1|
  double cond_indicator = 0.0;    ///< max over both inner solves
  double lambda_b = 0.0;          ///< values actually used
  double lambda_b_tilde = 0.0;
};

/// Everything solve_tunneling computes on the way, for dumps and tests.
struct TunnelingDetail {
  TunnelingResult result;
  InnerSolution first;
  InnerSolution second;
  ChannelAmplitudes amps;
  ChannelAmplitudes amps_tilde;
};

/// Full pipeline at E = setup.E. Errors from the stages are rethrown with the
/// stage and lambda value prefixed to the message.
TunnelingResult solve_tunneling(const PotentialProfile& profile, const ScatteringSetup& setup,
                                const BasisSet& basis, const SolveOptions& opts = {});
TunnelingDetail solve_tunneling_detail(const PotentialProfile& profile,
                                       const ScatteringSetup& setup, const BasisSet& basis,
                                       const SolveOptions& opts = {});

/// Debug dump: one CSV row per inner solution keyed by (profile, E, lambda_b):
/// profile,E,lambda_b,lambda_a,a1_re,a1_im,b1_re,b1_im,a3_re,a3_im,b3_re,b3_im,c_0,...
void write_debug_header(std::ostream& os, std::size_t basis_size);
void write_debug_rows(std::ostream& os, std::string_view profile_name,
                      const TunnelingDetail& detail);

}  // namespace vrm
