#pragma once

// Independent reference implementations used only by the tests. Everything
// here is written against textbook formulas with none of the library's
// numerics, so agreement is meaningful evidence rather than a tautology.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// Standard normal CDF from the positive power series
//   Phi(x) = 1/2 + phi(x) * sum_k x^(2k+1) / (1*3*...*(2k+1)),
// evaluated in long double. All series terms share the sign of x, so there is
// no cancellation; absolute error is far below 1e-16 for |x| <= 10.
inline double normal_cdf(double x) {
  if (x < 0.0) return 1.0 - normal_cdf(-x);
  if (x > 12.0) return 1.0;
  const long double xl = x;
  long double term = xl;
  long double sum = xl;
  for (int k = 1; k < 400; ++k) {
    term *= xl * xl / static_cast<long double>(2 * k + 1);
    sum += term;
    if (term < sum * 1e-22L) break;
  }
  const long double phi =
      std::exp(-xl * xl / 2.0L) / std::sqrt(2.0L * 3.141592653589793238462643383279503L);
  const long double result = 0.5L + phi * sum;
  return static_cast<double>(std::min(result, 1.0L));
}

inline double normal_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

// CDF of <X, e_1> for X uniform on the unit ball, closed forms for d <= 4
// (interval, disk segment, spherical cap, and the d = 4 antiderivative).
inline double ball_projection_cdf(int dim, double p) {
  if (p <= -1.0) return 0.0;
  if (p >= 1.0) return 1.0;
  switch (dim) {
    case 1:
      return (1.0 + p) / 2.0;
    case 2:
      return 1.0 - (std::acos(p) - p * std::sqrt(1.0 - p * p)) / kPi;
    case 3:
      return 1.0 - (1.0 - p) * (1.0 - p) * (2.0 + p) / 4.0;
    case 4: {
      const double root = std::sqrt(1.0 - p * p);
      return (p * (5.0 - 2.0 * p * p) * root + 3.0 * std::asin(p) + 1.5 * kPi) / (3.0 * kPi);
    }
    default:
      throw std::invalid_argument("ball_projection_cdf oracle: dim must be 1..4");
  }
}

// Density of the same projection: (1 - p^2)^((d-1)/2) * kappa_{d-1} / kappa_d.
inline double ball_projection_density(int dim, double p) {
  if (p <= -1.0 || p >= 1.0) return 0.0;
  auto kappa = [](int d) {
    return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
  };
  const double ratio = dim == 1 ? 0.5 : kappa(dim - 1) / kappa(dim);
  return ratio * std::pow(1.0 - p * p, (dim - 1) / 2.0);
}

// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
// Critical value at significance 0.001 (asymptotic): 1.94947 / sqrt(n).
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

inline double ks_critical_001(std::size_t n) {
  return 1.94947 / std::sqrt(static_cast<double>(n));
}

// Exact binomial coefficient in long double (multiplicative form).
inline double binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  long double out = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out *= static_cast<long double>(n - k + i);
    out /= static_cast<long double>(i);
  }
  return static_cast<double>(out);
}

// Andrew's monotone chain: counter-clockwise hull vertices of a 2-D point
// set. Collinear boundary points are dropped, so the vertex count equals the
// edge count for 3 or more vertices.
struct Hull2D {
  std::vector<Eigen::Vector2d> vertices;
  double area = 0.0;
};

inline Hull2D monotone_chain(const std::vector<Eigen::VectorXd>& points) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p(0), p(1));
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  Hull2D out;
  if (pts.size() < 3) {
    out.vertices = pts;
    return out;
  }
  std::vector<Eigen::Vector2d> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  out.vertices = h;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    out.area += a.x() * b.y() - b.x() * a.y();
  }
  out.area = std::abs(out.area) / 2.0;
  return out;
}

// Facet count by brute force: every d-subset whose affine hull keeps all
// remaining points on one closed side is supporting; supporting subsets are
// merged when they share the same on-plane point set. SVD-based normals, no
// code shared with the library.
inline std::int64_t brute_force_facets(const std::vector<Eigen::VectorXd>& points,
                                       double tol = 1e-9) {
  const int d = static_cast<int>(points[0].size());
  const int n = static_cast<int>(points.size());
  std::set<std::vector<int>> planes;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  auto advance = [&]() {
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  };
  do {
    Eigen::MatrixXd edges(d - 1, d);
    for (int i = 1; i < d; ++i) {
      edges.row(i - 1) = (points[idx[i]] - points[idx[0]]).transpose();
    }
    Eigen::VectorXd normal;
    double scale = 1.0;
    if (d == 1) {
      normal = Eigen::VectorXd::Ones(1);
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges, Eigen::ComputeFullV);
      if (svd.singularValues()(d - 2) <= tol * svd.singularValues()(0)) continue;
      normal = svd.matrixV().col(d - 1);
      scale = 1.0 + svd.singularValues()(0);
    }
    const double offset = normal.dot(points[idx[0]]);
    bool any_pos = false;
    bool any_neg = false;
    std::vector<int> on;
    for (int j = 0; j < n; ++j) {
      const double s = normal.dot(points[j]) - offset;
      if (s > tol * scale) {
        any_pos = true;
      } else if (s < -tol * scale) {
        any_neg = true;
      } else {
        on.push_back(j);
      }
      if (any_pos && any_neg) break;
    }
    if (any_pos && any_neg) continue;
    planes.insert(on);
  } while (advance());
  return static_cast<std::int64_t>(planes.size());
}

// Central difference for derivative checks.
template <typename F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracles
