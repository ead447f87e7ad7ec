#include <doctest.h>

#include <cmath>

#include "vrm/error.hpp"
#include "vrm/potentials.hpp"

using namespace vrm;

TEST_CASE("evaluate: catalog values") {
  CHECK(evaluate(LinearStep{0.5, 3.0}, 2.0) == doctest::Approx(0.5));
  CHECK(evaluate(LinearStep{0.5, 3.0, 1.0}, 1.0) == doctest::Approx(1.5));
  CHECK(evaluate(ExponentialStep{0.5, 1.0}, 1.0) == doctest::Approx(0.5));
  CHECK(evaluate(ExponentialStep{0.5, 1.0}, 2.0) == doctest::Approx(0.5 * std::exp(-1.0)));
  CHECK(evaluate(BellShaped{2.0, 5.0}, 5.0) == doctest::Approx(2.0));
  CHECK(evaluate(Parabolic{0.5, 1.0, 2.0}, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(evaluate(Parabolic{0.5, 1.0, 2.0}, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("evaluate: Eckart limits") {
  const Eckart e{1.0, 8.0, 8.0};
  CHECK(evaluate(e, -40.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(evaluate(e, 60.0) == doctest::Approx(0.5).epsilon(1e-12));
  // y = 1/2 at x0: (A/2 + B/4) / 2
  CHECK(evaluate(e, 8.0) == doctest::Approx(0.5 * (0.5 + 2.0)));
}

TEST_CASE("evaluate rejects non-finite x") {
  CHECK_THROWS_AS(evaluate(BellShaped{}, NAN), DomainError);
}

TEST_CASE("sampled profile") {
  const Sampled s({{0.0, 0.0}, {1.0, 2.0}, {3.0, 0.0}});
  CHECK(evaluate(s, 0.5) == doctest::Approx(1.0));
  CHECK(evaluate(s, 2.0) == doctest::Approx(1.0));
  CHECK(evaluate(s, 3.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(evaluate(s, 3.5), DomainError);
  CHECK(breakpoints(s).size() == 3);
  CHECK(breakpoints(BellShaped{}).empty());

  CHECK_THROWS_AS(Sampled({{0.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(Sampled({{0.0, 1.0}, {0.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(Sampled({{1.0, 1.0}, {0.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(Sampled({{0.0, NAN}, {1.0, 2.0}}), DomainError);
}

TEST_CASE("family names") {
  CHECK(family_name(PotentialProfile{LinearStep{}}) == "linear-step");
  CHECK(family_name(PotentialProfile{Eckart{}}) == "eckart");
  CHECK(kind(PotentialProfile{BellShaped{}}) == ProfileKind::BellShaped);
}

TEST_CASE("peak: closed forms") {
  const Peak p = peak(Parabolic{0.5, 1.0, 2.0}, {1.0, 3.0});
  CHECK(p.x == doctest::Approx(2.0));
  CHECK(p.value == doctest::Approx(0.5));

  const Peak b = peak(BellShaped{2.0, 5.0}, {1.0, 9.0});
  CHECK(b.x == doctest::Approx(5.0));
  CHECK(b.value == doctest::Approx(2.0));

  const Peak l = peak(LinearStep{0.5, 3.0, 1.0}, {1.0, 4.0});
  CHECK(l.x == doctest::Approx(1.0));
  CHECK(l.value == doctest::Approx(1.5));

  // vertex outside the window: clamp
  const Peak c = peak(BellShaped{2.0, 5.0}, {6.0, 9.0});
  CHECK(c.x == doctest::Approx(6.0));
}

TEST_CASE("peak: Eckart maximum") {
  // dV/dy = 0 at y = (A + B) / (2B) = 9/16, i.e. x = x0 + ln(9/7), V = (A + B)^2 / (8 B)
  const Peak p = peak(Eckart{1.0, 8.0, 8.0}, {2.0, 13.0});
  CHECK(p.x == doctest::Approx(8.0 + std::log(9.0 / 7.0)).epsilon(1e-8));
  CHECK(p.value == doctest::Approx(81.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("peak bounds every sampled value") {
  const std::vector<std::pair<PotentialProfile, Window>> cases{
      {LinearStep{0.5, 3.0, 1.0}, {1.0, 4.0}},
      {ExponentialStep{0.5, 1.0}, {1.0, 8.0}},
      {Parabolic{0.5, 1.0, 2.0}, {1.0, 3.0}},
      {BellShaped{2.0, 5.0}, {1.0, 9.0}},
      {Eckart{1.0, 8.0, 8.0}, {2.0, 13.0}},
      {Sampled({{0.0, 0.1}, {0.7, 0.9}, {2.0, 0.3}}), {0.0, 2.0}},
  };
  for (const auto& [profile, w] : cases) {
    const double top = peak(profile, w).value;
    for (int i = 0; i <= 2000; ++i) {
      const double x = w.a + (w.b - w.a) * i / 2000.0;
      REQUIRE(evaluate(profile, x) <= top + 1e-12);
    }
  }
}

TEST_CASE("continuity inside the window") {
  const PotentialProfile ps[] = {LinearStep{0.5, 3.0, 1.0}, ExponentialStep{}, Parabolic{},
                                 BellShaped{}, Eckart{}};
  for (const auto& p : ps) {
    for (double x = 1.0; x < 9.0; x += 0.37) {
      CHECK(std::abs(evaluate(p, x + 1e-9) - evaluate(p, x)) < 1e-7);
    }
  }
}

TEST_CASE("closed-form applicability") {
  CHECK(closed_form_applicable(BellShaped{2.0, 5.0}));
  CHECK_FALSE(closed_form_applicable(BellShaped{0.1, 5.0}));
  CHECK(closed_form_applicable(Eckart{1.0, 8.0, 8.0}));
  CHECK_FALSE(closed_form_applicable(Eckart{1.0, 0.2, 8.0}));
  CHECK_FALSE(closed_form_applicable(Parabolic{}));
}

TEST_CASE("wavenumbers") {
  auto k = wavenumbers({0.0, 1.0, 0.0, 0.0, 0.5});
  CHECK(k.k1 == doctest::Approx(1.0));
  CHECK(k.k3 == doctest::Approx(1.0));
  k = wavenumbers({0.0, 1.0, 0.0, 0.0, 2.0});
  CHECK(k.k1 == doctest::Approx(2.0));

  const Eckart e{1.0, 8.0, 8.0};
  const ScatteringSetup s{2.0, 13.0, evaluate(e, 2.0), evaluate(e, 13.0), 2.5};
  k = wavenumbers(s);
  CHECK(k.k1 > k.k3);
  CHECK(k.k1 == doctest::Approx(std::sqrt(2.0 * (2.5 - s.V1))));
}

TEST_CASE("setup validation") {
  CHECK_THROWS_AS(validate(ScatteringSetup{2.0, 1.0, 0.0, 0.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(validate(ScatteringSetup{0.0, 1.0, 0.0, 2.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(validate(ScatteringSetup{0.0, 1.0, 0.0, 0.0, NAN}), PreconditionError);
  CHECK_NOTHROW(validate(ScatteringSetup{0.0, 1.0, 0.0, 0.0, 1.0}));
}
