#include <doctest.h>

#include <cmath>

#include "vrm/error.hpp"
#include "vrm/oracles.hpp"

using namespace vrm;

namespace {

// textbook rectangular barrier of height V and width L, E < V
double rectangular_T(double E, double V, double L) {
  const double q = std::sqrt(2.0 * (V - E));
  const double s = std::sinh(q * L);
  return 1.0 / (1.0 + V * V * s * s / (4.0 * E * (V - E)));
}

}  // namespace

TEST_CASE("bell closed form") {
  CHECK(bell_transmission_exact(1e-8, 2.0) < 1e-6);
  CHECK(bell_transmission_exact(200.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bell_transmission_exact(2.0, 2.0) == doctest::Approx(0.59845151).epsilon(1e-7));
  CHECK(std::isfinite(bell_transmission_exact(1000.0, 2.0)));
  CHECK_THROWS_AS(bell_transmission_exact(1.0, 0.1), DomainError);
  CHECK_THROWS_AS(bell_transmission_exact(0.0, 2.0), DomainError);
}

TEST_CASE("Eckart closed form") {
  CHECK(eckart_reflection_exact(1000.0, 1.0, 8.0) < 1e-12);
  CHECK(eckart_reflection_exact(0.5 + 1e-10, 1.0, 8.0) == doctest::Approx(1.0).epsilon(1e-3));
  const auto rt = eckart_exact(2.5, 1.0, 8.0);
  CHECK(rt.R + rt.T == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(eckart_reflection_exact(0.4, 1.0, 8.0), DomainError);
  CHECK_THROWS_AS(eckart_reflection_exact(2.0, 1.0, 0.2), DomainError);
}

TEST_CASE("Eckart closed form against wide-window integration") {
  const Eckart e{1.0, 8.0, 8.0};
  for (double E : {0.7, 1.3, 2.5, 4.0}) {
    const ScatteringSetup s{-12.0, 28.0, evaluate(e, -12.0), evaluate(e, 28.0), E};
    const auto r = integrate_reference(e, s, 1e-10);
    CHECK(std::abs(r.R - eckart_reflection_exact(E, 1.0, 8.0)) <= 1e-6);
  }
}

TEST_CASE("bell closed form against integration") {
  for (double E : {0.5, 1.5, 2.0, 4.0}) {
    const auto wide = integrate_reference(BellShaped{2.0, 5.0}, {-5.0, 15.0, 0.0, 0.0, E}, 1e-10);
    CHECK(std::abs(wide.T - bell_transmission_exact(E, 2.0)) <= 1e-6);
    const auto narrow = integrate_reference(BellShaped{2.0, 5.0}, {1.0, 9.0, 0.0, 0.0, E}, 1e-10);
    CHECK(std::abs(narrow.T - bell_transmission_exact(E, 2.0)) <= 5e-3);
  }
}

TEST_CASE("free particle is fully transmitted") {
  const auto r = integrate_reference(Sampled({{-1.0, 0.0}, {5.0, 0.0}}), {0.0, 3.0, 0.0, 0.0, 0.5});
  CHECK(r.T == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.R) <= 1e-12);
}

TEST_CASE("tabulated exact and transfer-matrix values") {
  const auto e = integrate_reference(ExponentialStep{0.5, 1.0}, {1.0, 8.0, 0.0, 0.0, 0.125});
  CHECK(std::abs(e.T - 0.4789) <= 1e-3);
  const auto p = integrate_reference(Parabolic{0.5, 1.0, 2.0}, {1.0, 3.0, 0.0, 0.0, 0.05});
  CHECK(std::abs(p.T - 0.1124) <= 1e-3);
  CHECK(p.unitarity_defect <= 1e-8);
}

TEST_CASE("rectangular barrier") {
  const double V = 0.8, E = 0.3, L = 2.0;
  const ScatteringSetup s{0.0, L, 0.0, 0.0, E};
  const double ref = rectangular_T(E, V, L);
  const auto pair = matched_pair_transmission(evanescent_pair(std::sqrt(2.0 * (V - E))), s);
  CHECK(pair.T == doctest::Approx(ref).epsilon(1e-12));
  CHECK(pair.R + pair.T == doctest::Approx(1.0).epsilon(1e-12));
  const auto num = integrate_reference(Sampled({{0.0, V}, {L, V}}), s);
  CHECK(std::abs(num.T - ref) <= 1e-8);
}

TEST_CASE("plane-wave pair") {
  const ScatteringSetup s{1.0, 4.0, 0.0, 0.0, 0.7};
  const auto r = matched_pair_transmission(plane_wave_pair(std::sqrt(1.4)), s);
  CHECK(r.T == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(r.R) <= 1e-13);
}

TEST_CASE("unequal outer potentials") {
  // step down inside a constant region: T carries k3/k1
  const ScatteringSetup s{0.0, 1.5, 0.2, -0.3, 0.9};
  const double V = 0.1;
  const auto pair = matched_pair_transmission(plane_wave_pair(std::sqrt(2.0 * (s.E - V))), s);
  const auto num = integrate_reference(Sampled({{0.0, V}, {1.5, V}}), s);
  CHECK(std::abs(pair.T - num.T) <= 1e-8);
  CHECK(std::abs(pair.R - num.R) <= 1e-8);
  CHECK(pair.T + pair.R == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Airy pair solves the linear step") {
  const LinearStep step{0.5, 3.0, 1.0};
  for (double E : {0.5, 1.25, 2.0}) {
    const ScatteringSetup s{1.0, 4.0, 0.0, 0.0, E};
    const auto pair = matched_pair_transmission(airy_pair(step, E), s);
    const auto num = integrate_reference(step, s, 1e-11);
    CHECK(std::abs(pair.T - num.T) <= 1e-8);
  }
  // the calibrated cell: B = 3 at E = 1.25
  const auto cell = matched_pair_transmission(airy_pair(step, 1.25), {1.0, 4.0, 0.0, 0.0, 1.25});
  CHECK(std::abs(cell.T - 0.6077) <= 1e-4);
}

TEST_CASE("halving the tolerance moves T by less than the tolerance") {
  const ScatteringSetup s{1.0, 8.0, 0.0, 0.0, 0.2};
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    const double t1 = integrate_reference(ExponentialStep{0.5, 1.0}, s, tol).T;
    const double t2 = integrate_reference(ExponentialStep{0.5, 1.0}, s, tol / 2).T;
    CHECK(std::abs(t1 - t2) <= tol);
  }
  CHECK_THROWS_AS(integrate_reference(ExponentialStep{}, s, 1e-13), PreconditionError);
}

TEST_CASE("oracle T is nondecreasing in E") {
  struct Case {
    PotentialProfile p;
    double a, b, lo, hi;
    bool eval_outer;
  };
  const Case cases[] = {
      {LinearStep{0.5, 3.0, 1.0}, 1.0, 4.0, 0.2, 3.0, false},
      {ExponentialStep{0.5, 1.0}, 1.0, 8.0, 0.05, 1.0, false},
      {Parabolic{0.5, 1.0, 2.0}, 1.0, 3.0, 0.025, 1.0, false},
      {BellShaped{2.0, 5.0}, 1.0, 9.0, 0.5, 4.0, false},
      {Eckart{1.0, 8.0, 8.0}, 2.0, 13.0, 0.7, 4.0, true},
  };
  for (const auto& c : cases) {
    const double V1 = c.eval_outer ? evaluate(c.p, c.a) : 0.0;
    const double V3 = c.eval_outer ? evaluate(c.p, c.b) : 0.0;
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
      const double E = c.lo + (c.hi - c.lo) * i / 49.0;
      const double T = integrate_reference(c.p, {c.a, c.b, V1, V3, E}).T;
      CHECK(T >= prev - 1e-10);
      prev = T;
    }
  }
}
