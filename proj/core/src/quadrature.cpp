#include "vrm/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <string>

#include "vrm/error.hpp"

namespace vrm {

const GaussLegendreRule& gauss_legendre16() {
  static const GaussLegendreRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 16>;
    GaussLegendreRule r;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(-x[i]);
      r.weights.push_back(w[i]);
      r.nodes.push_back(x[i]);
      r.weights.push_back(w[i]);
    }
    return r;
  }();
  return rule;
}

namespace {

struct Refiner {
  const PanelIntegral& panel;
  double tol_density;  // allowed correction per unit length
  int max_depth;
  QuadratureReport report;

  Eigen::MatrixXd run(double lo, double hi, const Eigen::MatrixXd& coarse, int depth) {
    const double mid = 0.5 * (lo + hi);
    Eigen::MatrixXd left = panel(lo, mid);
    Eigen::MatrixXd right = panel(mid, hi);
    Eigen::MatrixXd fine = left + right;
    const double corr = (fine - coarse).cwiseAbs().maxCoeff();
    const double allowed = tol_density * (hi - lo);
    if (corr <= allowed) {
      report.panels += 2;
      report.max_correction = std::max(report.max_correction, corr);
      return fine;
    }
    if (depth >= max_depth) {
      throw NumericalError("quadrature did not converge on [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]: correction " + std::to_string(corr) +
                               " exceeds " + std::to_string(allowed),
                           corr);
    }
    return run(lo, mid, left, depth + 1) + run(mid, hi, right, depth + 1);
  }
};

}  // namespace

Eigen::MatrixXd integrate_panels(const PanelIntegral& panel, std::span<const double> edges,
                                 const QuadratureSpec& spec, QuadratureReport* report) {
  if (edges.size() < 2) throw PreconditionError("integrate_panels needs at least two edges");
  const double total = edges.back() - edges.front();
  if (!(total > 0)) throw PreconditionError("integrate_panels needs increasing edges");
  if (!(spec.tol > 0)) throw PreconditionError("quadrature tolerance must be positive");

  Refiner r{panel, spec.tol / total, spec.max_depth, {}};
  Eigen::MatrixXd sum;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    if (!(hi > lo)) continue;
    Eigen::MatrixXd part = r.run(lo, hi, panel(lo, hi), 0);
    if (sum.size() == 0)
      sum = std::move(part);
    else
      sum += part;
  }
  if (report) *report = r.report;
  return sum;
}

}  // namespace vrm
