#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "randpoly/distributions.hpp"

namespace randpoly {

// Monte Carlo estimate of the expected section-simplex volume at the axis
// midpoint, cached once per model. Every downstream quadrature result is
// exact conditional on this constant, so its std_error is the dominant error
// term of the deterministic route.
struct EDeltaConstant {
  double value = 1.0;
  double std_error = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

// The integrand profile evaluated on a grid; input to concavity_check.
struct SectionProfile {
  int dim = 0;
  ModelKind kind = ModelKind::gaussian;
  std::vector<double> grid;
  std::vector<double> values;
  EDeltaConstant e_delta;
};

struct ConcavityCertificate {
  double max_second_difference = 0.0;
  double threshold = 0.0;
  double argmax_s = 0.0;
  std::size_t argmax_index = 0;
  bool pass = false;
};

struct ReducedIntegralDifference {
  double direct = 0.0;
  double integrand_form = 0.0;
};

// Deterministic route to expected facet counts for rotation-invariant models:
// the expectation reduces to a one-dimensional integral over the mass s that
// a facet hyperplane cuts off, weighted by the profile of the projection
// density and the section-simplex expectation at the matching quantile.
class FacetCalculus {
 public:
  struct Options {
    std::uint64_t e_delta_reps = 1000000;
    std::uint64_t e_delta_seed = 1000003;
    double rel_tol = 1e-8;
    int max_intervals = 10000;
  };

  explicit FacetCalculus(BodyModel model);
  FacetCalculus(BodyModel model, Options options);

  const BodyModel& model() const { return model_; }
  const Options& options() const { return options_; }
  const EDeltaConstant& e_delta_constant() const { return e_delta_; }

  // Expected section-simplex volume at axis offset t (scales the cached
  // constant; exact in t, Monte Carlo only in the constant).
  double section_expectation(double t) const;

  // Profile value at s in (0, 1): density at the s-quantile times the
  // (d-1)-th root of the section expectation there. Needs dim >= 2.
  double profile_value(double s) const;

  // Closed-form profile derivative, Gaussian model only: -c * quantile(s)
  // with c = e_delta^(1/(d-1)).
  double gaussian_profile_derivative(double s) const;

  // binom(n, d) * integral over (0,1) of (1-s)^(n-d) * kernel(s) ds, where
  // kernel(s) = density(q(s))^(d-1) * section_expectation(q(s)). Needs n >= d.
  double reduced_facet_integral(std::uint64_t n,
                                std::optional<double> rel_tol = {}) const;

  // (d-1)! * sigma_d * reduced_facet_integral(n). Needs n >= d+1.
  double expected_facets(std::uint64_t n,
                         std::optional<double> rel_tol = {}) const;

  // Relative standard error inherited from the cached constant; multiply by
  // expected_facets(n) to get its standard error.
  double relative_std_error() const;

  // The increment integral(n) - integral(n-1), once as a direct difference
  // (internally tightened tolerance) and once as the single integral of
  // binom(n, d)/n * (1-s)^(n-d-1) * (d - n s) * kernel(s). Needs n >= d+1.
  ReducedIntegralDifference reduced_integral_difference(std::uint64_t n) const;

  // Profile sampled on a uniform grid, default 1001 points on
  // [1e-6, 1 - 1e-6].
  SectionProfile profile(std::size_t grid_points = 1001, double s_lo = 1e-6,
                         double s_hi = 1.0 - 1e-6) const;

 private:
  double kernel(double s) const;

  BodyModel model_;
  Options options_;
  EDeltaConstant e_delta_;
};

// Certifies concavity of a sampled profile: every centered second difference
// must stay below 1e-8 times the max absolute profile value. Works on any
// SectionProfile, including synthetic ones built in tests.
ConcavityCertificate concavity_check(const SectionProfile& profile);

// |integral over (0,1) of (1-s)^(n-d-1) * (d - n s) * s^(d-1) ds|, which is
// exactly zero; the returned residual is a pure quadrature health check.
double beta_identity_residual(std::uint64_t n, int d);

}  // namespace randpoly
