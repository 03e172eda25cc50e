#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "randpoly/quadrature.hpp"
#include "support/oracles.hpp"

using randpoly::integrate_adaptive;
using randpoly::QuadratureOptions;

TEST_CASE("polynomials are exact") {
  const auto r = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
  REQUIRE(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // A single K15 panel integrates degree <= 22 exactly.
  CHECK(r.intervals == 1);
}

TEST_CASE("smooth transcendental integrand") {
  const auto r = integrate_adaptive([](double x) { return std::exp(-x) * std::sin(3.0 * x); },
                                    0.0, 5.0);
  REQUIRE(r.converged);
  // Antiderivative of e^{-x} sin(3x): -(e^{-x}/10)(sin 3x + 3 cos 3x).
  auto anti = [](double x) {
    return -(std::exp(-x) / 10.0) * (std::sin(3.0 * x) + 3.0 * std::cos(3.0 * x));
  };
  CHECK(r.value == doctest::Approx(anti(5.0) - anti(0.0)).epsilon(1e-12));
  CHECK(std::abs(r.value - (anti(5.0) - anti(0.0))) <= 10.0 * r.error_estimate + 1e-15);
}

TEST_CASE("integrable endpoint singularity converges by subdivision") {
  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  const auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0,
                                    opt);
  REQUIRE(r.converged);
  CHECK(r.value == doctest::Approx(2.0 - 2e-6).epsilon(1e-9));
  CHECK(r.intervals > 10);
}

TEST_CASE("oscillatory integrand") {
  const auto r = integrate_adaptive([](double x) { return std::sin(51.0 * x); }, 0.0,
                                    oracles::kPi);
  REQUIRE(r.converged);
  // (1 - cos(51 pi)) / 51 = 2/51 since 51 is odd.
  CHECK(r.value == doctest::Approx(2.0 / 51.0).epsilon(1e-9));
}

TEST_CASE("split points seed the initial partition at a kink") {
  QuadratureOptions opt;
  opt.split_points = {0.3};
  const auto r = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, opt);
  REQUIRE(r.converged);
  // Exact: 0.3^2/2 + 0.7^2/2.
  CHECK(r.value == doctest::Approx(0.045 + 0.245).epsilon(1e-13));
  CHECK(r.intervals == 2);
}

TEST_CASE("interval budget failures are reported, not hidden") {
  QuadratureOptions opt;
  opt.rel_tol = 1e-13;
  opt.max_intervals = 3;
  const auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.37)); },
                                    0.0, 1.0, opt);
  CHECK_FALSE(r.converged);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("tolerances must be positive somewhere") {
  QuadratureOptions opt;
  opt.rel_tol = 0.0;
  opt.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, opt),
                  std::invalid_argument);
}

TEST_CASE("orientation and empty interval") {
  const auto r = integrate_adaptive([](double x) { return x; }, 1.0, 1.0);
  CHECK(r.value == 0.0);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("sharply peaked gaussian benefits from a split point") {
  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  opt.split_points = {0.5};
  const auto r = integrate_adaptive(
      [](double x) {
        const double t = (x - 0.5) / 1e-3;
        return std::exp(-0.5 * t * t);
      },
      0.0, 1.0, opt);
  REQUIRE(r.converged);
  CHECK(r.value == doctest::Approx(1e-3 * std::sqrt(2.0 * oracles::kPi)).epsilon(1e-8));
}
