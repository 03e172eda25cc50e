#pragma once

#include <Eigen/Dense>
#include <vector>

namespace randpoly {

using Vector = Eigen::VectorXd;

// Oriented hyperplane {x : <normal, x> = offset} with unit normal.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;
};

namespace detail {

// Scratch buffers so hot loops (hull enumeration) do not reallocate.
struct HyperplaneWorkspace {
  Eigen::MatrixXd edges;
  Eigen::MatrixXd minor;
  Vector normal;
};

// Hyperplane through the points selected by `idx` (size d) from `points`.
// Throws DegenerateInput when the selection is affinely dependent.
Hyperplane affine_hyperplane_indexed(const std::vector<Vector>& points,
                                     const int* idx, int count,
                                     HyperplaneWorkspace& ws);

}  // namespace detail

// Hyperplane through d affinely independent points in R^d. Normal is unit
// length and sign-canonical: the first nonzero component is positive.
Hyperplane affine_hyperplane(const std::vector<Vector>& points);

// k-dimensional volume of the simplex spanned by k+1 points in R^d (k <= d),
// via the Gram determinant sqrt(det(E E^T)) / k!. A single point has unit
// 0-dimensional measure.
double simplex_volume(const std::vector<Vector>& points);

// Side of the hyperplane a point falls on: +1 / -1 strictly off-plane, 0 when
// |<normal, x> - offset| <= 1e-9 * (1 + |offset|).
inline int side_of(const Hyperplane& h, const Vector& x) {
  const double v = h.normal.dot(x) - h.offset;
  const double dead = 1e-9 * (1.0 + std::abs(h.offset));
  if (v > dead) return 1;
  if (v < -dead) return -1;
  return 0;
}

// kappa_d (volume of the unit ball) and sigma_d (surface of the unit sphere).
struct DimensionConstants {
  double ball_volume = 0.0;
  double sphere_surface = 0.0;
};

DimensionConstants dimension_constants(int dim);

}  // namespace randpoly
