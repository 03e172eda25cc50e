#include "randpoly/hull.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "randpoly/errors.hpp"

namespace randpoly {

namespace {

void require_full_dimension(const std::vector<Vector>& points, int d) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd edges(n - 1, d);
  for (int i = 1; i < n; ++i)
    edges.row(i - 1) = (points[i] - points[0]).transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  qr.setThreshold(1e-9);
  qr.compute(edges);
  if (qr.rank() < d)
    throw DegenerateInput("convex_hull: points span a lower-dimensional subspace");
}

HullComplex hull_interval(const std::vector<Vector>& points) {
  int imin = 0;
  int imax = 0;
  for (int i = 1; i < static_cast<int>(points.size()); ++i) {
    if (points[i][0] < points[imin][0]) imin = i;
    if (points[i][0] > points[imax][0]) imax = i;
  }
  HullComplex hull;
  hull.dim = 1;
  hull.vertices = {std::min(imin, imax), std::max(imin, imax)};

  Facet low;
  low.vertices = {imin};
  low.plane.normal = -Vector::Ones(1);
  low.plane.offset = -points[imin][0];
  low.area = 1.0;
  Facet high;
  high.vertices = {imax};
  high.plane.normal = Vector::Ones(1);
  high.plane.offset = points[imax][0];
  high.area = 1.0;
  hull.facets = {std::move(low), std::move(high)};

  hull.f_vector = {std::int64_t{2}};
  hull.volume = points[imax][0] - points[imin][0];
  return hull;
}

struct FacetBuild {
  Hyperplane plane;
  int tuple_count = 0;
};

}  // namespace

HullComplex convex_hull(const std::vector<Vector>& points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: no points");
  const int d = static_cast<int>(points[0].size());
  const int n = static_cast<int>(points.size());
  for (const Vector& p : points) {
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("convex_hull: inconsistent dimensions");
    if (!p.allFinite())
      throw std::invalid_argument("convex_hull: non-finite coordinate");
  }
  if (n < d + 1)
    throw DegenerateInput("convex_hull: need at least d+1 points");
  require_full_dimension(points, d);
  if (d == 1) return hull_interval(points);

  HullComplex hull;
  hull.dim = d;

  detail::HyperplaneWorkspace ws;
  std::vector<char> in_tuple(static_cast<std::size_t>(n), 0);
  std::vector<int> on_plane;
  std::map<std::vector<int>, FacetBuild> builds;

  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    for (int v : idx) in_tuple[static_cast<std::size_t>(v)] = 1;
    bool degenerate = false;
    Hyperplane plane;
    try {
      plane = detail::affine_hyperplane_indexed(points, idx.data(), d, ws);
    } catch (const DegenerateInput&) {
      ++hull.diagnostics.degenerate_tuples;
      degenerate = true;
    }

    if (!degenerate) {
      int plus = 0;
      int minus = 0;
      on_plane.clear();
      for (int i = 0; i < n; ++i) {
        if (in_tuple[static_cast<std::size_t>(i)]) continue;
        const int s = side_of(plane, points[i]);
        if (s > 0) {
          ++plus;
          if (minus > 0) break;
        } else if (s < 0) {
          ++minus;
          if (plus > 0) break;
        } else {
          on_plane.push_back(i);
        }
      }
      if (plus == 0 || minus == 0) {
        if (plus > 0) {
          plane.normal = -plane.normal;
          plane.offset = -plane.offset;
        }
        std::vector<int> key(idx.begin(), idx.end());
        key.insert(key.end(), on_plane.begin(), on_plane.end());
        std::sort(key.begin(), key.end());
        auto [it, inserted] = builds.try_emplace(std::move(key));
        if (inserted) it->second.plane = plane;
        ++it->second.tuple_count;
      }
    }

    for (int v : idx) in_tuple[static_cast<std::size_t>(v)] = 0;
    int pos = d - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - d + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < d; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }

  hull.facets.reserve(builds.size());
  std::vector<Vector> scratch;
  for (auto& [key, build] : builds) {
    Facet facet;
    facet.plane = build.plane;
    if (static_cast<int>(key.size()) == d) {
      facet.vertices = key;
      scratch.assign(key.size(), Vector());
      for (std::size_t i = 0; i < key.size(); ++i)
        scratch[i] = points[static_cast<std::size_t>(key[i])];
      facet.area = simplex_volume(scratch);
    } else {
      // Coplanar candidates merged into one facet: recover the face polytope
      // in plane coordinates, keep only its extreme points.
      ++hull.diagnostics.merged_facets;
      Eigen::MatrixXd normal_col(d, 1);
      normal_col.col(0) = facet.plane.normal;
      const Eigen::MatrixXd q =
          Eigen::HouseholderQR<Eigen::MatrixXd>(normal_col).householderQ();
      const Eigen::MatrixXd basis = q.rightCols(d - 1);
      const Vector& origin = points[static_cast<std::size_t>(key[0])];
      std::vector<Vector> plane_coords;
      plane_coords.reserve(key.size());
      for (int v : key)
        plane_coords.push_back(
            basis.transpose() * (points[static_cast<std::size_t>(v)] - origin));
      const HullComplex face = convex_hull(plane_coords);
      facet.vertices.reserve(face.vertices.size());
      for (int v : face.vertices)
        facet.vertices.push_back(key[static_cast<std::size_t>(v)]);
      std::sort(facet.vertices.begin(), facet.vertices.end());
      facet.area = face.volume;
    }
    hull.facets.push_back(std::move(facet));
  }
  hull.diagnostics.ambiguous_faces = hull.diagnostics.merged_facets > 0;

  std::vector<char> is_vertex(static_cast<std::size_t>(n), 0);
  for (const Facet& f : hull.facets)
    for (int v : f.vertices) is_vertex[static_cast<std::size_t>(v)] = 1;
  for (int i = 0; i < n; ++i)
    if (is_vertex[static_cast<std::size_t>(i)]) hull.vertices.push_back(i);

  Vector centroid = Vector::Zero(d);
  for (int v : hull.vertices) centroid += points[static_cast<std::size_t>(v)];
  centroid /= static_cast<double>(hull.vertices.size());
  double volume = 0.0;
  for (const Facet& f : hull.facets)
    volume += f.area * (f.plane.offset - f.plane.normal.dot(centroid));
  hull.volume = volume / d;

  hull.f_vector.assign(static_cast<std::size_t>(d), std::nullopt);
  hull.f_vector[0] = static_cast<std::int64_t>(hull.vertices.size());
  hull.f_vector[static_cast<std::size_t>(d - 1)] =
      static_cast<std::int64_t>(hull.facets.size());
  if (d == 3)
    hull.f_vector[1] = *hull.f_vector[0] + *hull.f_vector[2] - 2;
  return hull;
}

const std::vector<std::optional<std::int64_t>>& f_vector(const HullComplex& hull) {
  return hull.f_vector;
}

double hull_volume(const HullComplex& hull) { return hull.volume; }

}  // namespace randpoly
