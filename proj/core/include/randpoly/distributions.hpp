#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "randpoly/estimate.hpp"
#include "randpoly/geometry.hpp"
#include "randpoly/rng.hpp"

namespace randpoly {

// Halfspace {x : <a, x> <= b}.
struct Halfspace {
  Vector a;
  double b = 0.0;
};

struct BoundingBox {
  Vector lo;
  Vector hi;
};

// Bounded polytope in halfspace representation. Construction certifies
// boundedness (per-coordinate LPs) and a nonempty interior (Chebyshev
// center); both are needed before rejection sampling makes sense.
class HPolytope {
 public:
  static HPolytope from_halfspaces(std::vector<Halfspace> halfspaces);

  // Text format: one halfspace per line, "a_1 ... a_d b" whitespace-separated
  // decimals meaning <a, x> <= b; blank lines and '#' comments are skipped.
  static HPolytope parse(std::istream& in);
  static HPolytope load(const std::filesystem::path& file);

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const BoundingBox& bounding_box() const { return box_; }
  const Vector& interior_point() const { return chebyshev_center_; }
  double inradius() const { return inradius_; }

  bool contains(const Vector& x, double tol = 1e-9) const;

  // Monte Carlo volume from bounding-box rejection counts; cached per
  // (reps, seed) so repeated queries are free.
  double volume_estimate(std::uint64_t reps = 200000,
                         std::uint64_t seed = 917) const;

 private:
  HPolytope() = default;

  int dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  BoundingBox box_;
  Vector chebyshev_center_;
  double inradius_ = 0.0;
  struct VolumeCache;
  std::shared_ptr<VolumeCache> volume_cache_;
};

enum class ModelKind { gaussian, ball_uniform, polytope_uniform };

const char* to_string(ModelKind kind);

// Sampling model for the random points: standard Gaussian, uniform on the
// unit ball, or uniform on a bounded polytope. Immutable and cheap to copy.
class BodyModel {
 public:
  static BodyModel gaussian(int dim);
  static BodyModel ball(int dim);
  static BodyModel polytope(HPolytope polytope);

  ModelKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool rotation_invariant() const { return kind_ != ModelKind::polytope_uniform; }
  const HPolytope& hpolytope() const;

 private:
  BodyModel(ModelKind kind, int dim) : kind_(kind), dim_(dim) {}

  ModelKind kind_ = ModelKind::gaussian;
  int dim_ = 0;
  std::shared_ptr<const HPolytope> polytope_;
};

// One draw from the model, consuming the given stream.
Vector sample_one(const BodyModel& model, PhiloxRng& rng);

// n i.i.d. draws, deterministic in (model, n, seed).
std::vector<Vector> sample(const BodyModel& model, std::uint64_t n,
                           std::uint64_t seed);

// Probability mass of the model on both sides of a hyperplane. Closed form
// for the rotation-invariant models (std_error = 0); Monte Carlo with
// sub_reps draws for polytopes. plus + minus == 1 exactly by construction.
struct HalfspaceMasses {
  double minus = 0.0;  // {x : <normal, x> <= offset}
  double plus = 0.0;
  double std_error = 0.0;
};

HalfspaceMasses halfspace_mass(const BodyModel& model, const Hyperplane& h,
                               std::uint64_t sub_reps, PhiloxRng& rng);
HalfspaceMasses halfspace_mass(const BodyModel& model, const Hyperplane& h,
                               std::uint64_t sub_reps, std::uint64_t seed);

// Density, CDF and quantile of <X, e_1> for a rotation-invariant model (the
// distribution of the projection onto any fixed axis).
double projection_density(const BodyModel& model, double t);
double projection_cdf(const BodyModel& model, double p);
double projection_quantile(const BodyModel& model, double s);

// Expected (d-1)-volume of the simplex of d independent points drawn from the
// model's section {x_1 = t}, estimated by Monte Carlo.
EstimateCI section_simplex_expectation(const BodyModel& model, double t,
                                       std::uint64_t reps, std::uint64_t seed);

}  // namespace randpoly
