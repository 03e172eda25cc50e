#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "randpoly/geometry.hpp"

namespace randpoly {

// One facet of the hull: the extreme points lying on its supporting
// hyperplane (sorted input indices) and the outward-oriented plane
// (side_of(plane, p) <= 0 for every input point).
struct Facet {
  std::vector<int> vertices;
  Hyperplane plane;
  double area = 0.0;  // (d-1)-dimensional measure
};

struct HullDiagnostics {
  // Candidate d-subsets whose points were affinely dependent.
  std::uint64_t degenerate_tuples = 0;
  // Facets assembled from more than one coplanar candidate subset.
  std::uint64_t merged_facets = 0;
  // True exactly when merging happened (> d input points on some facet plane).
  bool ambiguous_faces = false;
};

struct HullComplex {
  int dim = 0;
  std::vector<int> vertices;   // extreme points, sorted input indices
  std::vector<Facet> facets;
  // f_vector[j] = number of j-faces. Middle entries are absent for dim >= 4;
  // dim == 3 fills the edge count from the Euler relation.
  std::vector<std::optional<std::int64_t>> f_vector;
  double volume = 0.0;
  HullDiagnostics diagnostics;
};

// Convex hull by exhaustive facet enumeration: every d-subset is tested as a
// supporting hyperplane against all points, and coplanar candidates sharing a
// plane are merged into one facet. O(n^d * n) time, which is the point: it is
// a reference implementation whose correctness is easy to trust, and the
// expected-facet experiments only need modest n. Requires full-dimensional
// input (n >= d+1 points spanning R^d); throws DegenerateInput otherwise.
HullComplex convex_hull(const std::vector<Vector>& points);

// Accessors on the computed complex; the work happens in convex_hull.
const std::vector<std::optional<std::int64_t>>& f_vector(const HullComplex& hull);
double hull_volume(const HullComplex& hull);

}  // namespace randpoly
