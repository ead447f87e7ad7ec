#pragma once

// Independent reference values: closed forms for the bell and Eckart
// barriers, direct ODE integration for any profile, and exact matching of
// a known pair of inner solutions.

#include <functional>

#include "vrm/potentials.hpp"
#include "vrm/solver.hpp"

namespace vrm {

/// T for V0 / cosh^2(x - x0) on the whole line:
/// sinh^2(pi k) / (sinh^2(pi k) + cosh^2(pi beta / 2)), k = sqrt(2E),
/// beta = sqrt(8 V0 - 1). Evaluated with exponentials factored out, so large E
/// does not overflow. Throws DomainError unless E > 0 and 8 V0 > 1.
double bell_transmission_exact(double E, double V0);

/// Eckart barrier on the whole line, k = sqrt(2E), beta = sqrt(k^2 - A),
/// delta = sqrt(B - 1/4):
/// R = [cosh 2pi(k-beta) + cosh 2pi delta] / [cosh 2pi(k+beta) + cosh 2pi delta].
/// T is computed directly (not as 1 - R) to keep relative accuracy near
/// threshold. Throws DomainError unless B > 1/4 and E > A/2.
ScatteringCoefficients eckart_exact(double E, double A, double B);
double eckart_reflection_exact(double E, double A, double B);

struct ReferenceResult {
  double T = 0.0;
  double R = 0.0;
  double error_estimate = 0.0;    ///< |T - T at the previous tolerance|
  double unitarity_defect = 0.0;  ///< |T + R - 1|
  double integrator_tol = 0.0;    ///< relative tolerance of the accepted run
};

/// Integrates psi'' = 2 (V(x) - E) psi from b to a for the two real solutions
/// with (psi, psi')(b) = (1, 0) and (0, 1), adaptive Runge-Kutta-Fehlberg 7(8),
/// then matches to plane waves exactly like the variational solver does.
/// The integrator tolerance is tightened tenfold until T changes by at most
/// `tol` and |T + R - 1| <= tol. Throws NumericalError with the achieved
/// estimate if the tolerance floor is reached first; PreconditionError for
/// tol < 1e-12 or invalid setup.
ReferenceResult integrate_reference(const PotentialProfile& profile,
                                    const ScatteringSetup& setup, double tol = 1e-10);

/// Two exact inner solutions with derivatives.
struct SolutionPair {
  std::function<Complex(double)> f, df, g, dg;
};

/// Exact matching of psi_2 = alpha f + beta g to a unit incident wave from the
/// left and a pure transmitted wave on the right:
///   T = 4 (k3/k1) |N / D|^2, N = f(b) g'(b) - g(b) f'(b),
///   D = [g'(b) - i k3 g(b)] [f(a) - (i/k1) f'(a)]
///     - [f'(b) - i k3 f(b)] [g(a) - (i/k1) g'(a)].
/// R follows from the same amplitudes. Throws DegenerateError when the
/// Wronskian of the pair vanishes at a or b.
ScatteringCoefficients matched_pair_transmission(const SolutionPair& pair,
                                                 const ScatteringSetup& setup);

/// e^{ikx}, e^{-ikx}: exact for a constant potential with 2(E - V) = k^2.
SolutionPair plane_wave_pair(double k);
/// e^{qx}, e^{-qx}: exact for a constant potential with 2(V - E) = q^2.
SolutionPair evanescent_pair(double q);
/// Ai(z), Bi(z) with z = (2 V0)^{1/3} (B + origin - x - E/V0): exact for the
/// linear step. Requires V0 > 0.
SolutionPair airy_pair(const LinearStep& step, double E);

}  // namespace vrm
