#include "randpoly/facet_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "randpoly/errors.hpp"
#include "randpoly/quadrature.hpp"

namespace randpoly {

namespace {

double binomial(std::uint64_t n, int d) {
  double r = 1.0;
  for (int i = 1; i <= d; ++i)
    r = r * static_cast<double>(n - static_cast<std::uint64_t>(d) +
                                static_cast<std::uint64_t>(i)) /
        static_cast<double>(i);
  return r;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

FacetCalculus::FacetCalculus(BodyModel model)
    : FacetCalculus(std::move(model), Options()) {}

FacetCalculus::FacetCalculus(BodyModel model, Options options)
    : model_(std::move(model)), options_(options) {
  if (!model_.rotation_invariant())
    throw UnsupportedModel("FacetCalculus: needs a rotation-invariant model");
  if (options_.e_delta_reps < 2)
    throw std::invalid_argument("FacetCalculus: e_delta_reps < 2");

  if (model_.dim() == 1) {
    // A 0-dimensional simplex has unit measure; nothing to estimate.
    e_delta_.value = 1.0;
    e_delta_.std_error = 0.0;
    e_delta_.reps = 0;
    e_delta_.seed = options_.e_delta_seed;
    return;
  }
  const EstimateCI est = section_simplex_expectation(
      model_, 0.0, options_.e_delta_reps, options_.e_delta_seed);
  e_delta_.value = est.mean;
  e_delta_.std_error = est.std_error;
  e_delta_.reps = est.reps;
  e_delta_.seed = est.seed;
}

double FacetCalculus::section_expectation(double t) const {
  const int d = model_.dim();
  if (d == 1) return 1.0;
  switch (model_.kind()) {
    case ModelKind::gaussian:
      // Sections of a product Gaussian are the same Gaussian; no t anywhere.
      return e_delta_.value;
    case ModelKind::ball_uniform: {
      if (std::abs(t) >= 1.0) return 0.0;
      return e_delta_.value * std::pow(1.0 - t * t, (d - 1) / 2.0);
    }
    case ModelKind::polytope_uniform:
      break;
  }
  throw UnsupportedModel("section_expectation: unsupported model");
}

double FacetCalculus::kernel(double s) const {
  const double t = projection_quantile(model_, s);
  const double density = projection_density(model_, t);
  const int d = model_.dim();
  return std::pow(density, d - 1) * section_expectation(t);
}

double FacetCalculus::profile_value(double s) const {
  const int d = model_.dim();
  if (d < 2)
    throw DomainError("profile_value: profile needs dim >= 2");
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("profile_value: s must lie in (0, 1)");
  const double t = projection_quantile(model_, s);
  return projection_density(model_, t) *
         std::pow(section_expectation(t), 1.0 / (d - 1));
}

double FacetCalculus::gaussian_profile_derivative(double s) const {
  if (model_.kind() != ModelKind::gaussian)
    throw UnsupportedModel(
        "gaussian_profile_derivative: Gaussian model only");
  const int d = model_.dim();
  if (d < 2)
    throw DomainError("gaussian_profile_derivative: needs dim >= 2");
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("gaussian_profile_derivative: s must lie in (0, 1)");
  const double c = std::pow(e_delta_.value, 1.0 / (d - 1));
  return -c * projection_quantile(model_, s);
}

double FacetCalculus::reduced_facet_integral(
    std::uint64_t n, std::optional<double> rel_tol) const {
  const int d = model_.dim();
  if (n < static_cast<std::uint64_t>(d))
    throw std::invalid_argument("reduced_facet_integral: n < d");

  const double power = static_cast<double>(n - static_cast<std::uint64_t>(d));
  std::function<double(double)> f;
  if (d == 1) {
    f = [power](double s) { return std::pow(1.0 - s, power); };
  } else {
    f = [this, power](double s) {
      return std::pow(1.0 - s, power) * kernel(s);
    };
  }

  QuadratureOptions opts;
  opts.rel_tol = rel_tol.value_or(options_.rel_tol);
  opts.abs_tol = 0.0;
  opts.max_intervals = options_.max_intervals;
  // The integrand mass concentrates near s ~ d/n for large n; seeding the
  // partition there saves most of the adaptive work.
  const double peak = 3.0 * static_cast<double>(d) / static_cast<double>(n);
  if (peak < 1.0) opts.split_points.push_back(peak);

  const QuadratureResult result = integrate_adaptive(f, 0.0, 1.0, opts);
  if (!result.converged)
    throw QuadratureNoConvergence("reduced_facet_integral: interval budget hit");
  return binomial(n, d) * result.value;
}

double FacetCalculus::expected_facets(std::uint64_t n,
                                      std::optional<double> rel_tol) const {
  const int d = model_.dim();
  if (n < static_cast<std::uint64_t>(d) + 1)
    throw std::invalid_argument("expected_facets: n < d + 1");
  const double sigma = dimension_constants(d).sphere_surface;
  return factorial(d - 1) * sigma * reduced_facet_integral(n, rel_tol);
}

double FacetCalculus::relative_std_error() const {
  if (e_delta_.value == 0.0) return 0.0;
  return e_delta_.std_error / e_delta_.value;
}

ReducedIntegralDifference FacetCalculus::reduced_integral_difference(
    std::uint64_t n) const {
  const int d = model_.dim();
  if (n < static_cast<std::uint64_t>(d) + 1)
    throw std::invalid_argument("reduced_integral_difference: n < d + 1");

  // The increment is a few orders below the integrals themselves, so the
  // direct difference needs more accuracy than the public default.
  const double tight = std::min(options_.rel_tol, 1e-11);
  const double in = reduced_facet_integral(n, tight);
  const double in_prev = reduced_facet_integral(n - 1, tight);

  ReducedIntegralDifference diff;
  diff.direct = in - in_prev;

  const double power =
      static_cast<double>(n - static_cast<std::uint64_t>(d) - 1);
  const double nd = static_cast<double>(n);
  std::function<double(double)> f;
  if (d == 1) {
    f = [power, nd](double s) {
      return std::pow(1.0 - s, power) * (1.0 - nd * s);
    };
  } else {
    f = [this, power, nd, d](double s) {
      return std::pow(1.0 - s, power) * (static_cast<double>(d) - nd * s) *
             kernel(s);
    };
  }
  const double prefactor = binomial(n, d) / nd;

  QuadratureOptions opts;
  opts.rel_tol = 1e-9;
  // The integrand changes sign at s = d/n; the value can legitimately be tiny
  // against the integral scale (it is exactly zero for d == 1), so an
  // absolute floor tied to that scale is required for convergence.
  opts.abs_tol = 1e-12 * std::max(1.0, std::abs(in)) / prefactor;
  opts.max_intervals = options_.max_intervals;
  const double node = static_cast<double>(d) / nd;
  if (node < 1.0) opts.split_points.push_back(node);
  const double tail = 3.0 * static_cast<double>(d) / nd;
  if (tail < 1.0) opts.split_points.push_back(tail);

  const QuadratureResult result = integrate_adaptive(f, 0.0, 1.0, opts);
  if (!result.converged)
    throw QuadratureNoConvergence(
        "reduced_integral_difference: interval budget hit");
  diff.integrand_form = prefactor * result.value;
  return diff;
}

SectionProfile FacetCalculus::profile(std::size_t grid_points, double s_lo,
                                      double s_hi) const {
  if (model_.dim() < 2)
    throw DomainError("profile: needs dim >= 2");
  if (grid_points < 3)
    throw std::invalid_argument("profile: need at least 3 grid points");
  if (!(s_lo > 0.0 && s_lo < s_hi && s_hi < 1.0))
    throw std::invalid_argument("profile: need 0 < s_lo < s_hi < 1");

  SectionProfile p;
  p.dim = model_.dim();
  p.kind = model_.kind();
  p.e_delta = e_delta_;
  p.grid.resize(grid_points);
  p.values.resize(grid_points);
  const double step = (s_hi - s_lo) / static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double s = s_lo + step * static_cast<double>(i);
    p.grid[i] = s;
    p.values[i] = profile_value(s);
  }
  return p;
}

ConcavityCertificate concavity_check(const SectionProfile& profile) {
  const std::size_t m = profile.grid.size();
  if (m < 3 || profile.values.size() != m)
    throw std::invalid_argument("concavity_check: malformed profile");
  for (std::size_t i = 1; i < m; ++i)
    if (!(profile.grid[i] > profile.grid[i - 1]))
      throw std::invalid_argument("concavity_check: grid not increasing");

  double max_abs = 0.0;
  for (double v : profile.values) max_abs = std::max(max_abs, std::abs(v));

  // Second differences on the (possibly slightly nonuniform) grid, scaled to
  // the nominal step so the threshold is grid-size independent.
  const double h_nominal =
      (profile.grid[m - 1] - profile.grid[0]) / static_cast<double>(m - 1);
  ConcavityCertificate cert;
  cert.threshold = 1e-8 * max_abs;
  cert.argmax_s = profile.grid[1];
  cert.argmax_index = 1;
  cert.max_second_difference = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double h1 = profile.grid[i] - profile.grid[i - 1];
    const double h2 = profile.grid[i + 1] - profile.grid[i];
    const double second =
        2.0 *
        ((profile.values[i + 1] - profile.values[i]) / h2 -
         (profile.values[i] - profile.values[i - 1]) / h1) /
        (h1 + h2) * h_nominal * h_nominal;
    if (second > cert.max_second_difference) {
      cert.max_second_difference = second;
      cert.argmax_s = profile.grid[i];
      cert.argmax_index = i;
    }
  }
  cert.pass = cert.max_second_difference <= cert.threshold;
  return cert;
}

double beta_identity_residual(std::uint64_t n, int d) {
  if (d < 1) throw std::invalid_argument("beta_identity_residual: d < 1");
  if (n < static_cast<std::uint64_t>(d) + 1)
    throw std::invalid_argument("beta_identity_residual: n < d + 1");
  const double power =
      static_cast<double>(n - static_cast<std::uint64_t>(d) - 1);
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  QuadratureOptions opts;
  opts.rel_tol = 0.0;
  opts.abs_tol = 1e-12;
  opts.max_intervals = 10000;
  const double node = dd / nd;
  if (node < 1.0) opts.split_points.push_back(node);
  const double tail = 3.0 * dd / nd;
  if (tail < 1.0) opts.split_points.push_back(tail);
  const QuadratureResult result = integrate_adaptive(
      [power, nd, dd](double s) {
        return std::pow(1.0 - s, power) * (dd - nd * s) * std::pow(s, dd - 1.0);
      },
      0.0, 1.0, opts);
  if (!result.converged)
    throw QuadratureNoConvergence("beta_identity_residual: budget hit");
  return std::abs(result.value);
}

}  // namespace randpoly
