#include "vrm/oracles.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "vrm/error.hpp"

namespace vrm {
namespace {

constexpr double pi = std::numbers::pi;

// cosh(z) * exp(-shift), finite whenever |z| - shift is.
double scaled_cosh(double z, double shift) {
  return 0.5 * (std::exp(z - shift) + std::exp(-z - shift));
}

using State = std::array<double, 4>;  // u, u', v, v'

struct Rhs {
  const PotentialProfile& profile;
  double E;
  void operator()(const State& s, State& ds, double x) const {
    const double q = 2.0 * (evaluate(profile, x) - E);
    ds[0] = s[1];
    ds[1] = q * s[0];
    ds[2] = s[3];
    ds[3] = q * s[2];
  }
};

ScatteringCoefficients integrate_once(const PotentialProfile& profile,
                                      const ScatteringSetup& setup, double rtol) {
  namespace odeint = boost::numeric::odeint;
  using Stepper = odeint::runge_kutta_fehlberg78<State>;

  std::vector<double> nodes{setup.b};
  auto bp = breakpoints(profile);
  std::sort(bp.begin(), bp.end(), std::greater<>());
  for (double x : bp) {
    if (x > setup.a && x < setup.b) nodes.push_back(x);
  }
  nodes.push_back(setup.a);

  State s{1.0, 0.0, 0.0, 1.0};
  const Rhs rhs{profile, setup.E};
  const double atol = rtol * 1e-3;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double from = nodes[i], to = nodes[i + 1];
    const double dt0 = -std::min(0.01, 0.5 * (from - to));
    odeint::integrate_adaptive(odeint::make_controlled<Stepper>(atol, rtol), rhs, s, from, to,
                               dt0);
  }

  const BoundaryValues u{s[0], s[1], 1.0, 0.0};
  const BoundaryValues v{s[2], s[3], 0.0, 1.0};
  const auto [k1, k3] = wavenumbers(setup);
  return reflection_transmission(match_amplitudes(u, setup), match_amplitudes(v, setup), k1, k3);
}

Complex airy_ai(double z) { return boost::math::airy_ai(z); }
Complex airy_bi(double z) { return boost::math::airy_bi(z); }

}  // namespace

double bell_transmission_exact(double E, double V0) {
  if (!(E > 0)) throw DomainError("bell closed form requires E > 0");
  if (!(8.0 * V0 > 1.0)) throw DomainError("bell closed form requires 8 V0 > 1");
  const double x = pi * std::sqrt(2.0 * E);
  const double y = 0.5 * pi * std::sqrt(8.0 * V0 - 1.0);
  // cosh^2 y / sinh^2 x = e^{2(y-x)} [(1 + e^{-2y}) / (1 - e^{-2x})]^2
  const double ratio = (1.0 + std::exp(-2.0 * y)) / (-std::expm1(-2.0 * x));
  const double q = std::exp(2.0 * (y - x)) * ratio * ratio;
  return 1.0 / (1.0 + q);
}

ScatteringCoefficients eckart_exact(double E, double A, double B) {
  if (!(B > 0.25)) throw DomainError("Eckart closed form requires B > 1/4");
  if (!(E > 0.5 * A) || !(E > 0))
    throw DomainError("Eckart closed form requires E > A/2 (open transmitted channel)");
  const double k = std::sqrt(2.0 * E);
  const double beta = std::sqrt(k * k - A);
  const double delta = std::sqrt(B - 0.25);
  const double u = 2.0 * pi * (k + beta);
  const double v = 2.0 * pi * (k - beta);
  const double w = 2.0 * pi * delta;
  const double shift = std::max({u, std::abs(v), w});
  const double den = scaled_cosh(u, shift) + scaled_cosh(w, shift);
  const double R = (scaled_cosh(v, shift) + scaled_cosh(w, shift)) / den;
  // cosh u - cosh v = 2 sinh(2 pi k) sinh(2 pi beta)
  const double sk = 0.5 * (std::exp(2.0 * pi * k - 0.5 * shift) -
                           std::exp(-2.0 * pi * k - 0.5 * shift));
  const double sb = 0.5 * (std::exp(2.0 * pi * beta - 0.5 * shift) -
                           std::exp(-2.0 * pi * beta - 0.5 * shift));
  const double T = 2.0 * sk * sb / den;
  return {R, T};
}

double eckart_reflection_exact(double E, double A, double B) { return eckart_exact(E, A, B).R; }

ReferenceResult integrate_reference(const PotentialProfile& profile,
                                    const ScatteringSetup& setup, double tol) {
  if (!(tol >= 1e-12)) throw PreconditionError("integrate_reference: tol must be >= 1e-12");
  validate(setup);

  double rtol = std::min(1e-6, tol * 1e-2);
  constexpr double rtol_floor = 1e-15;
  ScatteringCoefficients prev = integrate_once(profile, setup, rtol);
  double best_estimate = std::numeric_limits<double>::infinity();
  while (true) {
    const double next_tol = std::max(rtol * 0.1, rtol_floor);
    const ScatteringCoefficients cur = integrate_once(profile, setup, next_tol);
    const double estimate = std::abs(cur.T - prev.T);
    const double defect = std::abs(cur.T + cur.R - 1.0);
    best_estimate = std::min(best_estimate, std::max(estimate, defect));
    if (estimate <= tol && defect <= tol) {
      return {cur.T, cur.R, estimate, defect, next_tol};
    }
    if (next_tol <= rtol_floor) {
      throw NumericalError("integrate_reference: tolerance " + std::to_string(tol) +
                               " not reached at the integrator floor (estimate " +
                               std::to_string(best_estimate) + ")",
                           best_estimate);
    }
    rtol = next_tol;
    prev = cur;
  }
}

ScatteringCoefficients matched_pair_transmission(const SolutionPair& p,
                                                 const ScatteringSetup& setup) {
  const auto [k1, k3] = wavenumbers(setup);
  const double a = setup.a, b = setup.b;
  const Complex i(0.0, 1.0);

  const Complex fa = p.f(a), dfa = p.df(a), ga = p.g(a), dga = p.dg(a);
  const Complex fb = p.f(b), dfb = p.df(b), gb = p.g(b), dgb = p.dg(b);

  const Complex wa = fa * dga - ga * dfa;
  const Complex wb = fb * dgb - gb * dfb;
  const double scale_a = std::abs(fa * dga) + std::abs(ga * dfa);
  const double scale_b = std::abs(fb * dgb) + std::abs(gb * dfb);
  if (!(std::abs(wa) > 1e-12 * scale_a) || !(std::abs(wb) > 1e-12 * scale_b))
    throw DegenerateError("matched_pair_transmission: solution pair is linearly dependent");

  const Complex Fb = dfb - i * k3 * fb;
  const Complex Gb = dgb - i * k3 * gb;
  const Complex N = wb;
  const Complex D = Gb * (fa - (i / k1) * dfa) - Fb * (ga - (i / k1) * dga);
  if (D == 0.0) throw DegenerateError("matched_pair_transmission: vanishing denominator");

  // psi_2 = s (Gb f - Fb g) with s = 2 e^{i k1 a} / D.
  const Complex s = 2.0 * std::exp(i * k1 * a) / D;
  const Complex psi_a = s * (Gb * fa - Fb * ga);
  const Complex r = (psi_a - std::exp(i * k1 * a)) * std::exp(i * k1 * a);

  const double T = 4.0 * (k3 / k1) * std::norm(N / D);
  return {std::norm(r), T};
}

SolutionPair plane_wave_pair(double k) {
  const Complex ik(0.0, k);
  return {[ik](double x) { return std::exp(ik * x); },
          [ik](double x) { return ik * std::exp(ik * x); },
          [ik](double x) { return std::exp(-ik * x); },
          [ik](double x) { return -ik * std::exp(-ik * x); }};
}

SolutionPair evanescent_pair(double q) {
  return {[q](double x) { return Complex(std::exp(q * x)); },
          [q](double x) { return Complex(q * std::exp(q * x)); },
          [q](double x) { return Complex(std::exp(-q * x)); },
          [q](double x) { return Complex(-q * std::exp(-q * x)); }};
}

SolutionPair airy_pair(const LinearStep& step, double E) {
  if (!(step.V0 > 0)) throw DomainError("airy_pair requires V0 > 0");
  const double c = std::cbrt(2.0 * step.V0);
  const double shift = step.B + step.origin - E / step.V0;
  auto z = [c, shift](double x) { return c * (shift - x); };
  return {[z](double x) { return airy_ai(z(x)); },
          [z, c](double x) { return Complex(-c * boost::math::airy_ai_prime(z(x))); },
          [z](double x) { return airy_bi(z(x)); },
          [z, c](double x) { return Complex(-c * boost::math::airy_bi_prime(z(x))); }};
}

}  // namespace vrm
