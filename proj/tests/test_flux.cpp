#include <doctest.h>

#include <cmath>
#include <random>

#include "coalesce/flux.hpp"

using namespace coalesce;

TEST_CASE("flux values") {
  CHECK(eval_flux(FluxSpec::regularized(1e-16), 0.0) == 0.0);
  CHECK(eval_flux(FluxSpec::regularized(3.0), 4.0) == 2.0);
  CHECK(eval_flux(FluxSpec::modular(), -2.0) == 2.0);
  CHECK(eval_flux(FluxSpec::quadratic(), -3.0) == 9.0);
  CHECK(eval_flux(FluxSpec::modular().with_drift(0.5), 2.0) == 3.0);
  CHECK_THROWS_AS(FluxSpec::regularized(0.0), ConfigError);
}

TEST_CASE("flux derivatives") {
  const double eps = 0.25;
  CHECK(eval_flux_derivative(FluxSpec::regularized(eps), 0.0) == 0.0);
  CHECK(eval_flux_derivative(FluxSpec::regularized(eps), eps) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(eval_flux_derivative(FluxSpec::regularized(1e-16), 1.0) - 1.0) <= 1e-30);
  CHECK(eval_flux_derivative(FluxSpec::modular(), 0.0) == 0.0);
  CHECK(at_subdifferential_point(FluxSpec::modular(), 0.0));
  CHECK_FALSE(at_subdifferential_point(FluxSpec::regularized(1e-3), 0.0));
}

TEST_CASE("regularized derivative approaches the sign") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mag(-8.0, 1.0);
  for (double eps : {1e-12, 1e-14, 1e-16}) {
    for (int i = 0; i < 200; ++i) {
      const double u = (i % 2 ? 1.0 : -1.0) * std::pow(10.0, mag(rng));
      const double d = eval_flux_derivative(FluxSpec::regularized(eps), u);
      CHECK(std::abs(d - (u > 0 ? 1.0 : -1.0)) <= eps * eps / (u * u) + 1e-16);
    }
  }
}

TEST_CASE("regularized flux is even and differentiable") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  const FluxSpec f = FluxSpec::regularized(0.5);
  const double step = 1e-4;
  for (int i = 0; i < 20; ++i) {
    const double u = d(rng);
    CHECK(eval_flux(f, u) == eval_flux(f, -u));
    CHECK(eval_flux_derivative(f, u) == -eval_flux_derivative(f, -u));
    const double fd = (eval_flux(f, u + step) - eval_flux(f, u - step)) / (2 * step);
    CHECK(std::abs(fd - eval_flux_derivative(f, u)) < 1e-7);
  }
}

TEST_CASE("tabulated flux") {
  const FluxSpec f = FluxSpec::tabulated(SampledTable({-1.0, 0.0, 2.0}, {1.0, 0.0, 4.0}));
  CHECK(eval_flux(f, 1.0) == 2.0);
  CHECK(eval_flux_derivative(f, 1.0) == 2.0);
  CHECK_THROWS_AS(eval_flux(f, 3.0), FluxRangeError);
  const ClampedValue c = eval_flux_clamped(f, 3.0);
  CHECK(c.out_of_range);
  CHECK(c.value == 4.0);
  CHECK_THROWS_AS(SampledTable({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}), ConfigError);
}

TEST_CASE("Rankine-Hugoniot speed") {
  CHECK(rankine_hugoniot_speed(FluxSpec::modular(), {-1.0, 1.0}) == 0.0);
  CHECK(rankine_hugoniot_speed(FluxSpec::modular(), {-2.0, 1.0}) == doctest::Approx(1.0 / 3.0));
  CHECK(rankine_hugoniot_speed(FluxSpec::quadratic(), {-1.0, 1.0}) == 0.0);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const ShockData s{d(rng), d(rng)};
    CHECK(rankine_hugoniot_speed(FluxSpec::quadratic(), s) ==
          rankine_hugoniot_speed(FluxSpec::quadratic(), {s.phi_plus, s.phi_minus}));
  }
}

TEST_CASE("entropy condition and classes") {
  CHECK(check_entropy_condition(FluxSpec::modular(), {-1.0, 1.0}).satisfied);
  const EntropyResult anti = check_entropy_condition(FluxSpec::modular(), {1.0, -1.0});
  CHECK_FALSE(anti.satisfied);
  REQUIRE(anti.witness);
  CHECK(*anti.witness > -1.0);
  CHECK(*anti.witness < 1.0);
  CHECK(check_entropy_condition(FluxSpec::quadratic(), {-1.0, 1.0}).satisfied);

  CHECK(classify_initial_data(FluxSpec::modular(), {-1.0, 1.0}) == DataClass::class_I);
  CHECK(classify_initial_data(FluxSpec::modular(), {1.0, 2.0}) == DataClass::class_II);
  CHECK(classify_initial_data(FluxSpec::modular(), {1.0, -1.0}) == DataClass::class_III);
}

TEST_CASE("modular shocks with opposite-sign limits satisfy the entropy condition") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> d(0.1, 10.0);
  for (int i = 0; i < 100; ++i) {
    CHECK(check_entropy_condition(FluxSpec::modular(), {-d(rng), d(rng)}, 2001).satisfied);
  }
}

TEST_CASE("initial profiles") {
  const auto shock1 = initial_condition(InitialConditionSpec::shock(1.0));
  CHECK(shock1(1.0) == 0.0);
  CHECK(initial_condition(InitialConditionSpec::shock(4.0))(0.0) == 0.0);
  const auto anti = initial_condition(InitialConditionSpec::antishock(1.0));
  CHECK(anti(40.0) == doctest::Approx(-1.0));
  CHECK(anti(-40.0) == doctest::Approx(1.0));
  const auto ch = initial_condition(InitialConditionSpec::cole_hopf(cole_hopf_default_amplitude()));
  CHECK(std::abs(ch(1.0)) < 1e-15);
  CHECK_THROWS_AS(initial_condition(InitialConditionSpec::shock(-1.0)), ConfigError);
}

TEST_CASE("modular traveling profile") {
  const ModularProfile p = modular_traveling_profile({-1.0, 1.0});
  CHECK(p.speed() == 0.0);
  CHECK(p.value(0.0) == 0.0);
  CHECK(p.value(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(p.value(-1.0) == doctest::Approx(-(1.0 - std::exp(-1.0))).epsilon(1e-15));
  CHECK(p.second_derivative(0.0) - p.second_derivative_left(0.0) ==
        doctest::Approx(-2.0 * std::abs(p.derivative(0.0))));
  CHECK_THROWS_AS(modular_traveling_profile({1.0, -1.0}), DomainError);
}

TEST_CASE("traveling profile solves its ODE away from the interface") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> lo(-3.0, -0.2), hi(0.2, 3.0);
  for (int i = 0; i < 20; ++i) {
    const ShockData s{lo(rng), hi(rng)};
    const ModularProfile p(s);
    const double c = p.speed();
    // -c phi' = phi'' + |phi|' on both sides of the interface.
    for (double x : {-1.3, -0.4, 0.4, 1.3}) {
      const double sgn = p.value(x) > 0 ? 1.0 : -1.0;
      const double lhs = -c * p.derivative(x);
      const double rhs = (x < 0 ? p.second_derivative_left(x) : p.second_derivative(x)) +
                         sgn * p.derivative(x);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
    CHECK(p.second_derivative(0.0) - p.second_derivative_left(0.0) ==
          doctest::Approx(-2.0 * std::abs(p.derivative(0.0))));
  }
}
