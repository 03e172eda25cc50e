#include "randpoly/distributions.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "randpoly/errors.hpp"
#include "randpoly/quadrature.hpp"
#include "simplex_lp.hpp"

namespace randpoly {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

// Residual tolerance of the quantile solver: |cdf(p) - s| <= this.
constexpr double kQuantileTol = 1e-12;

// Absolute tolerance for the ball projection CDF quadrature.
constexpr double kBallCdfTol = 1e-13;

// Rejection sampling attempts allowed per requested point.
constexpr std::uint64_t kRejectionBudgetPerPoint = 100000;

double standard_normal_cdf(double p) { return 0.5 * std::erfc(-p / kSqrt2); }

// P(<X, e_1> <= p) for X uniform on the unit d-ball. The substitution
// t = sin(theta) turns the integrand into cos(theta)^d, which is analytic, so
// the adaptive rule needs only a handful of panels even at tight tolerance.
double ball_projection_cdf(int d, double p) {
  if (p <= -1.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const DimensionConstants cd = dimension_constants(d);
  const DimensionConstants cdm1 = dimension_constants(d - 1);
  const double ratio = cdm1.ball_volume / cd.ball_volume;
  QuadratureOptions opts;
  opts.rel_tol = 0.0;
  opts.abs_tol = kBallCdfTol;
  opts.max_intervals = 2000;
  const auto result = integrate_adaptive(
      [d](double th) { return std::pow(std::cos(th), d); }, -0.5 * kPi,
      std::asin(p), opts);
  if (!result.converged)
    throw QuadratureNoConvergence("projection_cdf: ball quadrature stalled");
  return std::clamp(ratio * result.value, 0.0, 1.0);
}

Vector sample_ball(int d, PhiloxRng& rng) {
  Vector x(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      x[i] = rng.normal();
      norm2 += x[i] * x[i];
    }
  } while (norm2 <= 0.0);
  const double r = std::pow(rng.uniform(), 1.0 / d);
  return x * (r / std::sqrt(norm2));
}

}  // namespace

// ---------------------------------------------------------------------------
// HPolytope

struct HPolytope::VolumeCache {
  std::mutex mutex;
  bool filled = false;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
};

HPolytope HPolytope::from_halfspaces(std::vector<Halfspace> halfspaces) {
  if (halfspaces.empty())
    throw std::invalid_argument("HPolytope: no halfspaces");
  const int d = static_cast<int>(halfspaces[0].a.size());
  if (d < 1) throw std::invalid_argument("HPolytope: dimension must be >= 1");

  std::vector<Halfspace> kept;
  kept.reserve(halfspaces.size());
  for (const Halfspace& h : halfspaces) {
    if (static_cast<int>(h.a.size()) != d)
      throw std::invalid_argument("HPolytope: inconsistent dimensions");
    if (!h.a.allFinite() || !std::isfinite(h.b))
      throw std::invalid_argument("HPolytope: non-finite coefficient");
    if (h.a.cwiseAbs().maxCoeff() == 0.0) {
      if (h.b < 0.0)
        throw std::invalid_argument("HPolytope: infeasible zero-normal row");
      continue;  // 0 <= b is vacuous
    }
    kept.push_back(h);
  }
  if (kept.empty()) throw std::invalid_argument("HPolytope: no usable halfspaces");

  const int m = static_cast<int>(kept.size());
  Eigen::MatrixXd A(m, d);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i) = kept[i].a.transpose();
    b[i] = kept[i].b;
  }

  HPolytope poly;
  poly.dim_ = d;
  poly.halfspaces_ = std::move(kept);
  poly.box_.lo = Vector(d);
  poly.box_.hi = Vector(d);

  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    c[j] = 1.0;
    const auto up = detail::solve_lp_max(A, b, c);
    if (up.status == detail::LpStatus::infeasible)
      throw std::invalid_argument("HPolytope: empty polytope");
    if (up.status == detail::LpStatus::unbounded)
      throw std::invalid_argument("HPolytope: unbounded in +x" + std::to_string(j));
    c[j] = -1.0;
    const auto down = detail::solve_lp_max(A, b, c);
    if (down.status == detail::LpStatus::unbounded)
      throw std::invalid_argument("HPolytope: unbounded in -x" + std::to_string(j));
    if (down.status == detail::LpStatus::infeasible)
      throw std::invalid_argument("HPolytope: empty polytope");
    poly.box_.hi[j] = up.objective;
    poly.box_.lo[j] = -down.objective;
  }

  // Chebyshev center: maximize r with <a_i, x> + |a_i| r <= b_i.
  Eigen::MatrixXd Ac(m, d + 1);
  Eigen::VectorXd cc = Eigen::VectorXd::Zero(d + 1);
  cc[d] = 1.0;
  for (int i = 0; i < m; ++i) {
    Ac.row(i).head(d) = A.row(i);
    Ac(i, d) = A.row(i).norm();
  }
  const auto cheb = detail::solve_lp_max(Ac, b, cc);
  const double scale = 1.0 + poly.box_.hi.cwiseAbs().maxCoeff() +
                       poly.box_.lo.cwiseAbs().maxCoeff();
  if (cheb.status != detail::LpStatus::optimal ||
      cheb.objective <= 1e-12 * scale)
    throw std::invalid_argument("HPolytope: empty interior");
  poly.chebyshev_center_ = cheb.x.head(d);
  poly.inradius_ = cheb.objective;

  // Tiny inflation so boundary optima stay inside despite LP roundoff.
  for (int j = 0; j < d; ++j) {
    const double pad = 1e-12 * (1.0 + std::abs(poly.box_.lo[j]) +
                                std::abs(poly.box_.hi[j]));
    poly.box_.lo[j] -= pad;
    poly.box_.hi[j] += pad;
  }

  poly.volume_cache_ = std::make_shared<VolumeCache>();
  return poly;
}

HPolytope HPolytope::parse(std::istream& in) {
  std::vector<Halfspace> rows;
  std::string line;
  int d = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<double> vals;
    double v = 0.0;
    while (ss >> v) vals.push_back(v);
    if (!ss.eof())
      throw std::invalid_argument("HPolytope: bad token on line " +
                                  std::to_string(line_no));
    if (vals.empty()) continue;
    if (vals.size() < 2)
      throw std::invalid_argument("HPolytope: need at least 2 numbers on line " +
                                  std::to_string(line_no));
    if (d < 0) d = static_cast<int>(vals.size()) - 1;
    if (static_cast<int>(vals.size()) != d + 1)
      throw std::invalid_argument("HPolytope: wrong column count on line " +
                                  std::to_string(line_no));
    Halfspace h;
    h.a = Eigen::Map<const Eigen::VectorXd>(vals.data(), d);
    h.b = vals[static_cast<std::size_t>(d)];
    rows.push_back(std::move(h));
  }
  if (rows.empty()) throw std::invalid_argument("HPolytope: empty input");
  return from_halfspaces(std::move(rows));
}

HPolytope HPolytope::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw std::invalid_argument("HPolytope: cannot open " + file.string());
  return parse(in);
}

bool HPolytope::contains(const Vector& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("HPolytope::contains: dimension mismatch");
  for (const Halfspace& h : halfspaces_) {
    if (h.a.dot(x) > h.b + tol * (1.0 + std::abs(h.b))) return false;
  }
  return true;
}

double HPolytope::volume_estimate(std::uint64_t reps, std::uint64_t seed) const {
  if (reps == 0) throw std::invalid_argument("volume_estimate: reps == 0");
  std::lock_guard<std::mutex> lock(volume_cache_->mutex);
  if (volume_cache_->filled && volume_cache_->reps == reps &&
      volume_cache_->seed == seed)
    return volume_cache_->value;

  PhiloxRng rng(seed, 0);
  Vector x(dim_);
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    for (int j = 0; j < dim_; ++j)
      x[j] = rng.uniform(box_.lo[j], box_.hi[j]);
    if (contains(x, 0.0)) ++hits;
  }
  double box_volume = 1.0;
  for (int j = 0; j < dim_; ++j) box_volume *= box_.hi[j] - box_.lo[j];
  const double value =
      box_volume * static_cast<double>(hits) / static_cast<double>(reps);
  volume_cache_->filled = true;
  volume_cache_->reps = reps;
  volume_cache_->seed = seed;
  volume_cache_->value = value;
  return value;
}

// ---------------------------------------------------------------------------
// BodyModel

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::gaussian: return "gaussian";
    case ModelKind::ball_uniform: return "ball";
    case ModelKind::polytope_uniform: return "polytope";
  }
  return "unknown";
}

BodyModel BodyModel::gaussian(int dim) {
  if (dim < 1) throw std::invalid_argument("BodyModel: dim must be >= 1");
  return BodyModel(ModelKind::gaussian, dim);
}

BodyModel BodyModel::ball(int dim) {
  if (dim < 1) throw std::invalid_argument("BodyModel: dim must be >= 1");
  return BodyModel(ModelKind::ball_uniform, dim);
}

BodyModel BodyModel::polytope(HPolytope polytope) {
  BodyModel model(ModelKind::polytope_uniform, polytope.dim());
  model.polytope_ = std::make_shared<const HPolytope>(std::move(polytope));
  return model;
}

const HPolytope& BodyModel::hpolytope() const {
  if (!polytope_)
    throw UnsupportedModel("BodyModel: not a polytope model");
  return *polytope_;
}

// ---------------------------------------------------------------------------
// Sampling

Vector sample_one(const BodyModel& model, PhiloxRng& rng) {
  const int d = model.dim();
  switch (model.kind()) {
    case ModelKind::gaussian: {
      Vector x(d);
      for (int i = 0; i < d; ++i) x[i] = rng.normal();
      return x;
    }
    case ModelKind::ball_uniform:
      return sample_ball(d, rng);
    case ModelKind::polytope_uniform: {
      const HPolytope& poly = model.hpolytope();
      Vector x(d);
      for (std::uint64_t attempt = 0; attempt < kRejectionBudgetPerPoint;
           ++attempt) {
        for (int j = 0; j < d; ++j)
          x[j] = rng.uniform(poly.bounding_box().lo[j],
                             poly.bounding_box().hi[j]);
        if (poly.contains(x, 0.0)) return x;
      }
      throw RejectionBudgetExceeded(
          "sample_one: polytope acceptance rate below 1e-5");
    }
  }
  throw std::logic_error("sample_one: unreachable");
}

std::vector<Vector> sample(const BodyModel& model, std::uint64_t n,
                           std::uint64_t seed) {
  PhiloxRng rng(seed, 0);
  std::vector<Vector> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) points.push_back(sample_one(model, rng));
  return points;
}

// ---------------------------------------------------------------------------
// Halfspace masses and the projection distribution

HalfspaceMasses halfspace_mass(const BodyModel& model, const Hyperplane& h,
                               std::uint64_t sub_reps, PhiloxRng& rng) {
  if (static_cast<int>(h.normal.size()) != model.dim())
    throw std::invalid_argument("halfspace_mass: dimension mismatch");
  if (std::abs(h.normal.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("halfspace_mass: normal is not unit length");

  HalfspaceMasses masses;
  switch (model.kind()) {
    case ModelKind::gaussian:
      masses.minus = standard_normal_cdf(h.offset);
      break;
    case ModelKind::ball_uniform:
      masses.minus = ball_projection_cdf(model.dim(), h.offset);
      break;
    case ModelKind::polytope_uniform: {
      if (sub_reps == 0)
        throw std::invalid_argument("halfspace_mass: sub_reps == 0 for polytope");
      std::uint64_t below = 0;
      for (std::uint64_t r = 0; r < sub_reps; ++r) {
        const Vector x = sample_one(model, rng);
        if (h.normal.dot(x) <= h.offset) ++below;
      }
      masses.minus =
          static_cast<double>(below) / static_cast<double>(sub_reps);
      masses.std_error = std::sqrt(masses.minus * (1.0 - masses.minus) /
                                   static_cast<double>(sub_reps));
      break;
    }
  }
  masses.plus = 1.0 - masses.minus;
  return masses;
}

HalfspaceMasses halfspace_mass(const BodyModel& model, const Hyperplane& h,
                               std::uint64_t sub_reps, std::uint64_t seed) {
  PhiloxRng rng(seed, 0);
  return halfspace_mass(model, h, sub_reps, rng);
}

double projection_density(const BodyModel& model, double t) {
  const int d = model.dim();
  switch (model.kind()) {
    case ModelKind::gaussian:
      return std::exp(-0.5 * t * t) / std::sqrt(2.0 * kPi);
    case ModelKind::ball_uniform: {
      if (std::abs(t) >= 1.0) return 0.0;
      const double ratio = dimension_constants(d - 1).ball_volume /
                           dimension_constants(d).ball_volume;
      return ratio * std::pow(1.0 - t * t, (d - 1) / 2.0);
    }
    case ModelKind::polytope_uniform:
      break;
  }
  throw UnsupportedModel("projection_density: needs a rotation-invariant model");
}

double projection_cdf(const BodyModel& model, double p) {
  switch (model.kind()) {
    case ModelKind::gaussian:
      return standard_normal_cdf(p);
    case ModelKind::ball_uniform:
      return ball_projection_cdf(model.dim(), p);
    case ModelKind::polytope_uniform:
      break;
  }
  throw UnsupportedModel("projection_cdf: needs a rotation-invariant model");
}

double projection_quantile(const BodyModel& model, double s) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("projection_quantile: s must lie in (0, 1)");
  double lo = 0.0;
  double hi = 0.0;
  switch (model.kind()) {
    case ModelKind::gaussian:
      lo = -40.0;
      hi = 40.0;
      break;
    case ModelKind::ball_uniform:
      lo = -1.0;
      hi = 1.0;
      break;
    case ModelKind::polytope_uniform:
      throw UnsupportedModel(
          "projection_quantile: needs a rotation-invariant model");
  }

  // Newton safeguarded by the bracket; the support is a single interval, so
  // bisection alone would already converge.
  double p = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double r = projection_cdf(model, p) - s;
    if (std::abs(r) <= kQuantileTol) return p;
    if (r > 0.0)
      hi = p;
    else
      lo = p;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(p)))
      return p;
    const double dens = projection_density(model, p);
    double next = dens > 0.0 ? p - r / dens : p;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    p = next;
  }
  return p;
}

EstimateCI section_simplex_expectation(const BodyModel& model, double t,
                                       std::uint64_t reps,
                                       std::uint64_t seed) {
  if (!model.rotation_invariant())
    throw UnsupportedModel(
        "section_simplex_expectation: needs a rotation-invariant model");
  const int d = model.dim();
  if (d < 2)
    throw std::invalid_argument("section_simplex_expectation: needs dim >= 2");
  if (reps < 2)
    throw std::invalid_argument("section_simplex_expectation: reps < 2");

  double radius = 0.0;
  if (model.kind() == ModelKind::ball_uniform) {
    if (std::abs(t) >= 1.0)
      throw DomainError("section_simplex_expectation: |t| >= 1 slices nothing");
    radius = std::sqrt(1.0 - t * t);
  }

  const auto start = std::chrono::steady_clock::now();
  PhiloxRng rng(seed, 0);
  std::vector<Vector> pts(static_cast<std::size_t>(d), Vector(d - 1));
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    for (int i = 0; i < d; ++i) {
      if (model.kind() == ModelKind::gaussian) {
        for (int j = 0; j < d - 1; ++j) pts[static_cast<std::size_t>(i)][j] = rng.normal();
      } else {
        pts[static_cast<std::size_t>(i)] = sample_ball(d - 1, rng) * radius;
      }
    }
    const double v = simplex_volume(pts);
    const double delta = v - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (v - mean);
  }

  EstimateCI est;
  est.mean = mean;
  est.std_error = std::sqrt(
      m2 / (static_cast<double>(reps - 1) * static_cast<double>(reps)));
  est.reps = reps;
  est.seed = seed;
  est.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return est;
}

}  // namespace randpoly
