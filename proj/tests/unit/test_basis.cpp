#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "vrm/basis.hpp"
#include "vrm/error.hpp"

using namespace vrm;
using std::numbers::pi;

namespace {

// composite Simpson, n even
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kappa_grid") {
  auto g = kappa_grid(0.1, 0.1, 6.0);
  REQUIRE(g.size() == 60);
  CHECK(g.front() == doctest::Approx(0.1));
  CHECK(g.back() == doctest::Approx(6.0));
  CHECK(kappa_grid(0.1, 0.2, 3.0).size() == 15);
  g = kappa_grid(1.0, 0.5, 1.0);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == 1.0);
  CHECK_THROWS_AS(kappa_grid(0.1, 0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(kappa_grid(2.0, 0.1, 1.0), PreconditionError);
}

TEST_CASE("BasisSet preconditions") {
  CHECK_THROWS_AS(BasisSet({1.0}, {0.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(BasisSet({1.0, 1.0}, {0.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(BasisSet({-1.0, 1.0}, {0.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(BasisSet({1.0, 2.0}, {1.0, 1.0}), PreconditionError);
}

TEST_CASE("basis_eval") {
  const BasisSet b({0.1, 1.0, 2.0}, {0.0, 4.0});
  auto v = basis_eval(b, 1, 0.0);
  CHECK(v.value == doctest::Approx(1.0));
  CHECK(v.derivative == doctest::Approx(0.0));
  v = basis_eval(b, 2, pi / 4);
  CHECK(v.value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.derivative == doctest::Approx(-2.0));
  v = basis_eval(b, 0, 3.0);
  CHECK(v.value == doctest::Approx(std::cos(0.3)));
  CHECK(v.derivative == doctest::Approx(-0.1 * std::sin(0.3)));
  CHECK_THROWS_AS(basis_eval(b, 3, 0.0), PreconditionError);
}

TEST_CASE("free particle A on [0, pi] vanishes for kappa = 1, E = 1/2") {
  // N = 1 is below the BasisSet minimum; the (0,0) entry of a two-function set is the same integral.
  const BasisSet b({1.0, 2.0}, {0.0, pi});
  const ScatteringSetup s{0.0, pi, 0.0, 0.0, 0.5};
  const auto sys = assemble_system(b, Sampled({{0.0, 0.0}, {pi, 0.0}}), s, {});
  CHECK(sys.A(0, 0) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("A is symmetric for every catalog profile") {
  const std::vector<std::tuple<PotentialProfile, double, double, double>> cases{
      {LinearStep{0.5, 3.0, 1.0}, 1.0, 4.0, 1.0},   {ExponentialStep{0.5, 1.0}, 1.0, 8.0, 0.25},
      {Parabolic{0.5, 1.0, 2.0}, 1.0, 3.0, 0.1},    {BellShaped{2.0, 5.0}, 1.0, 9.0, 2.0},
      {Eckart{1.0, 8.0, 8.0}, 2.0, 13.0, 2.5},
  };
  for (const auto& [p, a, b, E] : cases) {
    const BasisSet basis(kappa_grid(0.1, 0.1, 6.0), {a, b});
    const ScatteringSetup s{a, b, 0.0, 0.0, E};
    const auto sys = assemble_system(basis, p, s, {});
    CHECK(max_abs(sys.A - sys.A.transpose()) <= 1e-12 * max_abs(sys.A));
  }
}

TEST_CASE("potential term of the linear step against a Simpson oracle") {
  const LinearStep step{0.5, 3.0};
  const BasisSet b({1.0, 2.0}, {1.0, 3.0});
  const QuadratureSpec q{};
  const Eigen::MatrixXd Vm = potential_matrix(b, step, q);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double ki = b.kappas()[i], kj = b.kappas()[j];
      const double ref = simpson(
          [&](double x) { return std::cos(ki * x) * 0.5 * (3.0 - x) * std::cos(kj * x); }, 1.0, 3.0,
          20000);
      CHECK(Vm(i, j) == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("energy matrices, free particle") {
  const BasisSet b({0.7, 1.9}, {0.0, 2.0});
  const ScatteringSetup s{0.0, 2.0, 0.0, 0.0, 1.0};
  const auto em = assemble_energy_matrices(b, Sampled({{0.0, 0.0}, {2.0, 0.0}}), s, {});
  CHECK(em.P(0, 0) == doctest::Approx(0.5 * 0.49 * em.Rm(0, 0)));
  CHECK(em.P(1, 1) == doctest::Approx(0.5 * 1.9 * 1.9 * em.Rm(1, 1)));
}

TEST_CASE("overlap on [0, pi]") {
  const BasisSet b({1.0, 2.0}, {0.0, pi});
  const auto Rm = overlap_matrix(b);
  CHECK(Rm(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(Rm(0, 0) == doctest::Approx(pi / 2));
  const auto K = derivative_overlap_matrix(b);
  CHECK(K(1, 1) == doctest::Approx(4.0 * pi / 2));
}

TEST_CASE("closed-form overlap and derivative overlap against Simpson") {
  const BasisSet b({0.0, 0.1, 0.1000001, 2.3, 6.0}, {1.0, 8.0});
  const auto Rm = overlap_matrix(b);
  const auto K = derivative_overlap_matrix(b);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double ki = b.kappas()[i], kj = b.kappas()[j];
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      const double r = simpson([&](double x) { return std::cos(ki * x) * std::cos(kj * x); }, 1.0, 8.0, 200000);
      const double k = simpson([&](double x) { return ki * kj * std::sin(ki * x) * std::sin(kj * x); }, 1.0, 8.0, 200000);
      CHECK(Rm(ii, jj) == doctest::Approx(r).epsilon(1e-10));
      CHECK(K(ii, jj) == doctest::Approx(k).epsilon(1e-10));
    }
  }
}

TEST_CASE("bell P(0,0) against a 10^6-panel Simpson reference") {
  const BellShaped bell{2.0, 5.0};
  const BasisSet b(kappa_grid(0.1, 0.2, 3.0), {1.0, 9.0});
  const ScatteringSetup s{1.0, 9.0, 0.0, 0.0, 2.0};
  const auto em = assemble_energy_matrices(b, bell, s, {});
  const double k = 0.1;
  const double ref = simpson(
      [&](double x) {
        const double c = std::cos(k * x);
        return c * (0.5 * k * k * c + evaluate(bell, x) * c);
      },
      1.0, 9.0, 1000000);
  CHECK(std::abs(em.P(0, 0) - ref) <= 1e-9);
}

TEST_CASE("A is affine in E with slope 2 Rm") {
  const ExponentialStep p{0.5, 1.0};
  const BasisSet b(kappa_grid(0.1, 0.1, 6.0), {1.0, 8.0});
  const auto A1 = assemble_system(b, p, {1.0, 8.0, 0.0, 0.0, 0.25}, {}).A;
  const auto A2 = assemble_system(b, p, {1.0, 8.0, 0.0, 0.0, 0.7}, {}).A;
  const Eigen::MatrixXd expect = 2.0 * (0.25 - 0.7) * overlap_matrix(b);
  CHECK(max_abs(A1 - A2 - expect) <= 1e-10);
}

TEST_CASE("doubling the panel floor leaves the potential matrix unchanged") {
  const QuadratureSpec q{};
  const std::vector<std::tuple<PotentialProfile, double, double>> cases{
      {BellShaped{2.0, 5.0}, 1.0, 9.0}, {ExponentialStep{0.5, 1.0}, 1.0, 8.0},
      {Eckart{1.0, 8.0, 8.0}, 2.0, 13.0}};
  for (const auto& [p, a, bnd] : cases) {
    const BasisSet b(kappa_grid(0.1, 0.1, 6.0), {a, bnd});
    QuadratureReport rep;
    const auto V1 = potential_matrix(b, p, q, &rep);
    QuadratureSpec q2 = q;
    q2.min_panels = 2 * rep.panels;
    const auto V2 = potential_matrix(b, p, q2);
    CHECK(max_abs(V1 - V2) <= q.tol);
  }
}

TEST_CASE("overlap is positive definite") {
  for (auto [kap, a, b] : {std::tuple{kappa_grid(0.1, 0.2, 3.0), 1.0, 9.0},
                           std::tuple{kappa_grid(0.001, 0.2, 3.0), 2.0, 13.0}}) {
    Eigen::LLT<Eigen::MatrixXd> llt(overlap_matrix(BasisSet(kap, {a, b})));
    CHECK(llt.info() == Eigen::Success);
  }
  // these are PD only to rounding: quadratic forms stay positive
  const std::vector<double> parabolic{0.1, 0.5, 0.9, 1.3, 2.0, 2.4, 3.0,
                                      3.4, 4.0, 4.4, 5.0, 5.4, 6.0};
  for (auto [kap, a, b] : {std::tuple{kappa_grid(0.1, 0.1, 6.0), 1.0, 8.0},
                           std::tuple{parabolic, 1.0, 3.0}}) {
    const auto Rm = overlap_matrix(BasisSet(kap, {a, b}));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Rm);
    CHECK(es.eigenvalues().minCoeff() >= -1e-14 * es.eigenvalues().maxCoeff());
    Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(Rm.rows(), -1.0, 1.0);
    CHECK(c.dot(Rm * c) > 0.0);
  }
}

TEST_CASE("canonical orthogonalizer whitens the overlap") {
  const auto Rm = overlap_matrix(BasisSet(kappa_grid(0.1, 0.1, 6.0), {1.0, 8.0}));
  const auto X = canonical_orthogonalizer(Rm);
  CHECK(X.cols() < 60);
  CHECK(X.cols() > 10);
  const Eigen::MatrixXd I = X.transpose() * Rm * X;
  // the smallest kept directions sit near rounding level
  CHECK(max_abs(I - Eigen::MatrixXd::Identity(X.cols(), X.cols())) < 1e-2);

  const auto Xc = canonical_orthogonalizer(Rm, 1e-8);
  CHECK(Xc.cols() < X.cols());
  const Eigen::MatrixXd Ic = Xc.transpose() * Rm * Xc;
  CHECK(max_abs(Ic - Eigen::MatrixXd::Identity(Xc.cols(), Xc.cols())) < 1e-6);
}

TEST_CASE("window must match the setup") {
  const BasisSet b({1.0, 2.0}, {0.0, 1.0});
  CHECK_THROWS_AS(assemble_system(b, BellShaped{}, {0.0, 2.0, 0.0, 0.0, 1.0}, {}), PreconditionError);
}
