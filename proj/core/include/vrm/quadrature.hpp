#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vrm {

/// Composite Gauss-Legendre with fixed nodes per panel and adaptive bisection.
struct QuadratureSpec {
  double tol = 1e-10;   ///< absolute error budget per matrix entry over [a, b]
  int min_panels = 0;   ///< 0: derived from the fastest basis oscillation
  int max_depth = 24;   ///< bisection levels below an initial panel
};

/// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre16();

/// Integral of a matrix-valued integrand over one panel [lo, hi].
using PanelIntegral = std::function<Eigen::MatrixXd(double lo, double hi)>;

struct QuadratureReport {
  int panels = 0;
  double max_correction = 0.0;  ///< largest accepted |coarse - refined| entry
};

/// Sums `panel` over the initial `edges` (sorted, at least two), bisecting
/// each panel until splitting it changes no entry by more than
/// tol * (panel width / total width). Throws NumericalError carrying the
/// achieved correction when max_depth is exhausted.
Eigen::MatrixXd integrate_panels(const PanelIntegral& panel, std::span<const double> edges,
                                 const QuadratureSpec& spec, QuadratureReport* report = nullptr);

}  // namespace vrm
