#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "randpoly/distributions.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/geometry.hpp"
#include "randpoly/rng.hpp"
#include "support/oracles.hpp"

using randpoly::BodyModel;
using randpoly::Halfspace;
using randpoly::HPolytope;
using randpoly::Vector;

namespace {

Vector make(std::initializer_list<double> entries) {
  Vector v(static_cast<int>(entries.size()));
  int i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

HPolytope unit_square() {
  std::vector<Halfspace> hs;
  hs.push_back({make({1.0, 0.0}), 0.5});
  hs.push_back({make({-1.0, 0.0}), 0.5});
  hs.push_back({make({0.0, 1.0}), 0.5});
  hs.push_back({make({0.0, -1.0}), 0.5});
  return HPolytope::from_halfspaces(std::move(hs));
}

randpoly::Hyperplane axis_plane(int dim, double offset) {
  Vector n = Vector::Zero(dim);
  n(0) = 1.0;
  return {n, offset};
}

}  // namespace

TEST_CASE("projection density pins: gaussian and disk at the origin") {
  CHECK(randpoly::projection_density(BodyModel::gaussian(2), 0.0) ==
        doctest::Approx(0.398942280401433).epsilon(1e-12));
  CHECK(randpoly::projection_density(BodyModel::ball(2), 0.0) ==
        doctest::Approx(0.636619772367581).epsilon(1e-12));
  CHECK(randpoly::projection_density(BodyModel::ball(2), 0.0) ==
        doctest::Approx(oracles::ball_projection_density(2, 0.0)).epsilon(1e-13));
}

TEST_CASE("gaussian projection CDF matches the series oracle") {
  const auto model = BodyModel::gaussian(3);
  CHECK(randpoly::projection_cdf(model, 1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
  for (double p = -6.0; p <= 6.0; p += 0.25) {
    CHECK(randpoly::projection_cdf(model, p) ==
          doctest::Approx(oracles::normal_cdf(p)).epsilon(1e-13));
  }
}

TEST_CASE("ball projection CDF matches closed forms in dimensions 1 through 4") {
  CHECK(randpoly::projection_cdf(BodyModel::ball(2), 0.5) ==
        doctest::Approx(0.804498890522115).epsilon(1e-12));
  for (int d = 1; d <= 4; ++d) {
    const auto model = BodyModel::ball(d);
    for (double p = -0.95; p <= 0.95; p += 0.1301) {
      CHECK(randpoly::projection_cdf(model, p) ==
            doctest::Approx(oracles::ball_projection_cdf(d, p)).epsilon(1e-11));
    }
    CHECK(randpoly::projection_cdf(model, -1.0) == 0.0);
    CHECK(randpoly::projection_cdf(model, 1.0) == 1.0);
  }
}

TEST_CASE("ball projection density matches the normalized power form") {
  for (int d = 2; d <= 6; ++d) {
    const auto model = BodyModel::ball(d);
    for (double p = -0.9; p <= 0.9; p += 0.3) {
      const double kappa_ratio = randpoly::dimension_constants(d - 1).ball_volume /
                                 randpoly::dimension_constants(d).ball_volume;
      CHECK(randpoly::projection_density(model, p) ==
            doctest::Approx(kappa_ratio * std::pow(1.0 - p * p, (d - 1) / 2.0)).epsilon(1e-12));
    }
    CHECK(randpoly::projection_density(model, 1.5) == 0.0);
  }
}

TEST_CASE("quantile is the inverse CDF to high accuracy") {
  for (const auto& model : {BodyModel::gaussian(2), BodyModel::gaussian(5), BodyModel::ball(2),
                            BodyModel::ball(4), BodyModel::ball(7)}) {
    for (double s : {1e-6, 1e-3, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999, 1.0 - 1e-6}) {
      const double q = randpoly::projection_quantile(model, s);
      CHECK(std::abs(randpoly::projection_cdf(model, q) - s) <= 1e-12);
    }
  }
  CHECK(randpoly::projection_quantile(BodyModel::gaussian(2), 0.841344746068543) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(randpoly::projection_quantile(BodyModel::ball(3), 0.5) ==
        doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("quantile rejects arguments outside the open unit interval") {
  const auto model = BodyModel::ball(2);
  CHECK_THROWS_AS(randpoly::projection_quantile(model, 0.0), randpoly::DomainError);
  CHECK_THROWS_AS(randpoly::projection_quantile(model, 1.0), randpoly::DomainError);
  CHECK_THROWS_AS(randpoly::projection_quantile(model, -0.5), randpoly::DomainError);
}

TEST_CASE("halfspace masses are complementary and match the CDF") {
  for (const auto& model : {BodyModel::gaussian(3), BodyModel::ball(3)}) {
    for (double offset : {-0.8, -0.2, 0.0, 0.4, 0.9}) {
      const auto m = randpoly::halfspace_mass(model, axis_plane(3, offset), 0, 12345);
      CHECK(m.minus + m.plus == 1.0);  // exact by construction
      CHECK(m.minus == doctest::Approx(randpoly::projection_cdf(model, offset)).epsilon(1e-12));
      CHECK(m.std_error == 0.0);
    }
  }
}

TEST_CASE("halfspace mass requires a unit normal") {
  const auto model = BodyModel::gaussian(2);
  randpoly::Hyperplane bad{make({2.0, 0.0}), 0.0};
  CHECK_THROWS_AS(randpoly::halfspace_mass(model, bad, 0, 1), std::invalid_argument);
}

TEST_CASE("polytope halfspace mass agrees with geometry on the unit square") {
  const auto model = BodyModel::polytope(unit_square());
  // Plane x = 0.1 splits the square into width 0.6 and 0.4 pieces.
  const auto m = randpoly::halfspace_mass(model, axis_plane(2, 0.1), 20000, 99);
  CHECK(m.minus + m.plus == 1.0);
  CHECK(m.std_error > 0.0);
  CHECK(std::abs(m.minus - 0.6) < 4.0 * m.std_error);
}

TEST_CASE("gaussian samples project to the reference normal CDF") {
  const auto model = BodyModel::gaussian(3);
  const auto pts = randpoly::sample(model, 20000, 2718);
  std::vector<double> proj;
  proj.reserve(pts.size());
  for (const auto& p : pts) proj.push_back(p(1));
  const double d = oracles::ks_statistic(std::move(proj), oracles::normal_cdf);
  CHECK(d < oracles::ks_critical_001(20000));
}

TEST_CASE("ball samples project to the closed-form CDF") {
  const auto model = BodyModel::ball(3);
  const auto pts = randpoly::sample(model, 20000, 3141);
  std::vector<double> proj;
  proj.reserve(pts.size());
  for (const auto& p : pts) {
    REQUIRE(p.norm() <= 1.0 + 1e-12);
    proj.push_back(p(0));
  }
  const double d = oracles::ks_statistic(
      std::move(proj), [](double x) { return oracles::ball_projection_cdf(3, x); });
  CHECK(d < oracles::ks_critical_001(20000));
}

TEST_CASE("polytope samples stay inside and fill the square uniformly") {
  const auto model = BodyModel::polytope(unit_square());
  const auto pts = randpoly::sample(model, 20000, 161803);
  std::vector<double> xs;
  for (const auto& p : pts) {
    REQUIRE(model.hpolytope().contains(p));
    xs.push_back(p(0));
  }
  const double d = oracles::ks_statistic(std::move(xs),
                                         [](double x) { return std::min(1.0, x + 0.5); });
  CHECK(d < oracles::ks_critical_001(20000));
}

TEST_CASE("sampling is deterministic in (model, n, seed)") {
  const auto model = BodyModel::ball(4);
  const auto a = randpoly::sample(model, 64, 7);
  const auto b = randpoly::sample(model, 64, 7);
  const auto c = randpoly::sample(model, 64, 8);
  REQUIRE(a.size() == b.size());
  bool all_equal = true;
  bool differs_from_c = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] - b[i]).norm() != 0.0) all_equal = false;
    if ((a[i] - c[i]).norm() != 0.0) differs_from_c = true;
  }
  CHECK(all_equal);
  CHECK(differs_from_c);
}

TEST_CASE("polytope parser reads halfspaces with comments") {
  std::istringstream in(
      "# a square\n"
      "1 0 0.5\n"
      "-1 0 0.5\n"
      "\n"
      "0 1 0.5\n"
      "0 -1 0.5\n");
  const auto poly = HPolytope::parse(in);
  CHECK(poly.dim() == 2);
  CHECK(poly.halfspaces().size() == 4);
  CHECK(poly.contains(make({0.0, 0.0})));
  CHECK(poly.contains(make({0.49, -0.49})));
  CHECK_FALSE(poly.contains(make({0.6, 0.0})));
  CHECK(poly.inradius() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("polytope parser reports the offending line") {
  std::istringstream in("1 0 0.5\n-1 zebra 0.5\n");
  try {
    HPolytope::parse(in);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("polytope parser rejects inconsistent row widths") {
  std::istringstream in("1 0 0.5\n-1 0 0 0.5\n");
  CHECK_THROWS_AS(HPolytope::parse(in), std::invalid_argument);
}

TEST_CASE("unbounded halfspace systems are rejected") {
  std::vector<Halfspace> hs;
  hs.push_back({make({1.0, 0.0}), 1.0});
  hs.push_back({make({0.0, 1.0}), 1.0});
  CHECK_THROWS_AS(HPolytope::from_halfspaces(std::move(hs)), std::invalid_argument);
}

TEST_CASE("empty-interior systems are rejected") {
  std::vector<Halfspace> hs;
  hs.push_back({make({1.0, 0.0}), 0.0});
  hs.push_back({make({-1.0, 0.0}), 0.0});
  hs.push_back({make({0.0, 1.0}), 1.0});
  hs.push_back({make({0.0, -1.0}), 1.0});
  CHECK_THROWS_AS(HPolytope::from_halfspaces(std::move(hs)), std::invalid_argument);
}

TEST_CASE("infeasible systems are rejected") {
  std::vector<Halfspace> hs;
  hs.push_back({make({1.0, 0.0}), -1.0});
  hs.push_back({make({-1.0, 0.0}), -1.0});
  CHECK_THROWS_AS(HPolytope::from_halfspaces(std::move(hs)), std::invalid_argument);
}

TEST_CASE("volume estimate recovers the square") {
  const auto poly = unit_square();
  const double v = poly.volume_estimate(100000, 5);
  CHECK(std::abs(v - 1.0) < 0.02);
  // Cached: identical arguments return the identical value.
  CHECK(poly.volume_estimate(100000, 5) == v);
}

TEST_CASE("rejection sampling gives up on a sliver") {
  // A diagonal strip of width ~1e-7 inside [-1,1]^2: the bounding box
  // acceptance rate is far below the per-point budget.
  std::vector<Halfspace> hs;
  hs.push_back({make({1.0, 1.0}), 1e-7});
  hs.push_back({make({-1.0, -1.0}), 1e-7});
  hs.push_back({make({1.0, -1.0}), 2.0});
  hs.push_back({make({-1.0, 1.0}), 2.0});
  const auto model = BodyModel::polytope(HPolytope::from_halfspaces(std::move(hs)));
  CHECK_THROWS_AS(randpoly::sample(model, 4, 1), randpoly::RejectionBudgetExceeded);
}

TEST_CASE("section simplex expectation: gaussian planar sections are chords") {
  // d = 2: the section is a 1-D gaussian, and the expected distance of two
  // standard normals is 2/sqrt(pi), independent of the offset t.
  const auto model = BodyModel::gaussian(2);
  const auto at0 = randpoly::section_simplex_expectation(model, 0.0, 200000, 11);
  const auto at1 = randpoly::section_simplex_expectation(model, 1.0, 200000, 11);
  const double truth = 2.0 / std::sqrt(oracles::kPi);
  CHECK(std::abs(at0.mean - truth) < 4.0 * at0.std_error);
  CHECK(std::abs(at1.mean - truth) < 4.0 * at1.std_error);
  CHECK(at0.std_error > 0.0);
  CHECK(at0.std_error < 0.01);
}

TEST_CASE("section simplex expectation: disk chords shrink with the offset") {
  // d = 2 ball: the section at t is an interval of length 2 sqrt(1-t^2) and
  // the expected distance of two uniform points on it is a third of that.
  const auto model = BodyModel::ball(2);
  const auto at0 = randpoly::section_simplex_expectation(model, 0.0, 200000, 13);
  const auto half = randpoly::section_simplex_expectation(model, 0.5, 200000, 13);
  CHECK(std::abs(at0.mean - 2.0 / 3.0) < 4.0 * at0.std_error);
  const double truth = 2.0 * std::sqrt(0.75) / 3.0;
  CHECK(std::abs(half.mean - truth) < 4.0 * half.std_error);
}

TEST_CASE("section simplex expectation rejects sections outside the ball") {
  const auto model = BodyModel::ball(3);
  CHECK_THROWS_AS(randpoly::section_simplex_expectation(model, 1.0, 100, 1),
                  randpoly::DomainError);
  CHECK_THROWS_AS(randpoly::section_simplex_expectation(model, -1.5, 100, 1),
                  randpoly::DomainError);
}

TEST_CASE("rotation invariance gate") {
  const auto model = BodyModel::polytope(unit_square());
  CHECK_FALSE(model.rotation_invariant());
  CHECK_THROWS_AS(randpoly::projection_cdf(model, 0.0), randpoly::UnsupportedModel);
  CHECK_THROWS_AS(randpoly::projection_density(model, 0.0), randpoly::UnsupportedModel);
  CHECK_THROWS_AS(randpoly::projection_quantile(model, 0.5), randpoly::UnsupportedModel);
}
