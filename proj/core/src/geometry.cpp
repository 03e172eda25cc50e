#include "randpoly/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "randpoly/errors.hpp"

namespace randpoly {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void canonicalize_sign(Vector& normal) {
  for (Eigen::Index j = 0; j < normal.size(); ++j) {
    if (normal[j] != 0.0) {
      if (normal[j] < 0.0) normal = -normal;
      return;
    }
  }
}

}  // namespace

namespace detail {

Hyperplane affine_hyperplane_indexed(const std::vector<Vector>& points,
                                     const int* idx, int count,
                                     HyperplaneWorkspace& ws) {
  const int d = static_cast<int>(points[idx[0]].size());
  if (count != d)
    throw std::invalid_argument("affine_hyperplane: need exactly d points");

  if (d == 1) {
    Hyperplane h;
    h.normal = Vector::Ones(1);
    h.offset = points[idx[0]][0];
    return h;
  }

  ws.edges.resize(d - 1, d);
  const Vector& base = points[idx[0]];
  double edge_scale = 1.0;
  for (int i = 1; i < d; ++i) {
    ws.edges.row(i - 1) = (points[idx[i]] - base).transpose();
    edge_scale *= ws.edges.row(i - 1).norm();
  }

  // Generalized cross product of the edge rows by cofactor expansion.
  ws.minor.resize(d - 1, d - 1);
  ws.normal.resize(d);
  for (int j = 0; j < d; ++j) {
    int c = 0;
    for (int col = 0; col < d; ++col) {
      if (col == j) continue;
      ws.minor.col(c++) = ws.edges.col(col);
    }
    const double det = ws.minor.determinant();
    ws.normal[j] = (j % 2 == 0) ? det : -det;
  }

  const double norm = ws.normal.norm();
  if (!(norm > 1e-9 * edge_scale))
    throw DegenerateInput("affine_hyperplane: points are affinely dependent");

  Hyperplane h;
  h.normal = ws.normal / norm;
  canonicalize_sign(h.normal);
  double offset = 0.0;
  for (int i = 0; i < d; ++i) offset += h.normal.dot(points[idx[i]]);
  h.offset = offset / d;
  return h;
}

}  // namespace detail

Hyperplane affine_hyperplane(const std::vector<Vector>& points) {
  if (points.empty())
    throw std::invalid_argument("affine_hyperplane: empty point set");
  const int d = static_cast<int>(points[0].size());
  if (static_cast<int>(points.size()) != d)
    throw std::invalid_argument("affine_hyperplane: need exactly d points in R^d");
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) {
    if (points[i].size() != d)
      throw std::invalid_argument("affine_hyperplane: inconsistent dimensions");
    if (!points[i].allFinite())
      throw std::invalid_argument("affine_hyperplane: non-finite coordinate");
    idx[i] = i;
  }
  detail::HyperplaneWorkspace ws;
  return detail::affine_hyperplane_indexed(points, idx.data(), d, ws);
}

double simplex_volume(const std::vector<Vector>& points) {
  if (points.empty()) throw std::invalid_argument("simplex_volume: empty point set");
  const int k = static_cast<int>(points.size()) - 1;
  const int d = static_cast<int>(points[0].size());
  for (const Vector& p : points) {
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("simplex_volume: inconsistent dimensions");
  }
  if (k > d)
    throw std::invalid_argument("simplex_volume: more than d+1 points in R^d");
  if (k == 0) return 1.0;

  Eigen::MatrixXd edges(k, d);
  for (int i = 1; i <= k; ++i)
    edges.row(i - 1) = (points[i] - points[0]).transpose();
  const Eigen::MatrixXd gram = edges * edges.transpose();
  const double det = std::max(gram.determinant(), 0.0);
  return std::sqrt(det) / factorial(k);
}

DimensionConstants dimension_constants(int dim) {
  if (dim < 0) throw std::invalid_argument("dimension_constants: dim < 0");
  const double pi = 3.14159265358979323846;
  DimensionConstants c;
  c.ball_volume = std::pow(pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
  c.sphere_surface =
      dim > 0 ? 2.0 * std::pow(pi, dim / 2.0) / std::tgamma(dim / 2.0) : 0.0;
  return c;
}

}  // namespace randpoly
