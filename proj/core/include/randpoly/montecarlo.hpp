#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "randpoly/distributions.hpp"
#include "randpoly/estimate.hpp"
#include "randpoly/facet_calculus.hpp"
#include "randpoly/hull.hpp"

namespace randpoly {

// Number of worker threads the replication engine will use: the
// RANDPOLY_THREADS environment variable when set, hardware concurrency
// otherwise. Results never depend on it; replication k always consumes
// Philox stream k and pooling happens in index order.
unsigned worker_count();

struct FVectorEstimate {
  int dim = 0;
  // Entry j estimates the expected number of j-faces; middle entries are
  // absent for dim >= 4, matching the hull module.
  std::vector<std::optional<EstimateCI>> per_face_dim;
  std::uint64_t degenerate_draws = 0;
};

struct VolumeEstimate {
  EstimateCI volume;
  std::uint64_t degenerate_draws = 0;
};

// Both estimates from one shared replication pass over the sampled hulls.
struct HullMcSummary {
  int dim = 0;
  std::vector<std::optional<EstimateCI>> per_face_dim;
  EstimateCI volume;
  std::uint64_t degenerate_draws = 0;
};

HullMcSummary mc_hull_summary(const BodyModel& model, std::uint64_t n,
                              std::uint64_t reps, std::uint64_t seed);
FVectorEstimate mc_expected_fvector(const BodyModel& model, std::uint64_t n,
                                    std::uint64_t reps, std::uint64_t seed);
VolumeEstimate mc_expected_volume(const BodyModel& model, std::uint64_t n,
                                  std::uint64_t reps, std::uint64_t seed);

// Facet-count estimator that never builds a hull: draw d points, take their
// hyperplane, and score binom(n, d) times the chance that the remaining
// n - d points all fall on one side. Exact single-rep value for n == d + 1.
struct FacetProbabilityEstimate {
  EstimateCI facets;
  std::uint64_t degenerate_tuples = 0;
};

FacetProbabilityEstimate facet_probability_estimator(const BodyModel& model,
                                                     std::uint64_t n,
                                                     std::uint64_t reps,
                                                     std::uint64_t sub_reps,
                                                     std::uint64_t seed);

enum class SweepMethod { quadrature, hull, facet_probability };

const char* to_string(SweepMethod method);
std::optional<SweepMethod> parse_sweep_method(std::string_view name);

struct MonotonicityReport {
  SweepMethod method = SweepMethod::quadrature;
  std::vector<std::uint64_t> n_values;
  std::vector<double> values;
  std::vector<double> std_errors;
  std::vector<double> differences;       // values[i+1] - values[i]
  std::vector<double> diff_std_errors;   // paired across common random numbers
  double min_difference = 0.0;
  bool nondecreasing = false;
  std::optional<ConcavityCertificate> concavity;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

struct SweepExtras {
  std::uint64_t sub_reps = 1000;
  std::uint64_t e_delta_reps = 1000000;
  double tol = 1e-8;
  bool concavity_certificate = true;
};

// Expected facet count along increasing n, by the chosen route. Monte Carlo
// methods reuse stream r for replication r at every n (common random
// numbers), so the reported difference standard errors are paired. The
// nondecreasing flag tolerates -1e-10 for the quadrature route and -3
// paired standard errors for the Monte Carlo routes.
MonotonicityReport monotonicity_sweep(const BodyModel& model,
                                      const std::vector<std::uint64_t>& n_values,
                                      SweepMethod method, std::uint64_t reps,
                                      std::uint64_t seed,
                                      const SweepExtras& extras = {});

// Expected hull volume for point sets drawn from two nested bodies. The
// inclusion inner subset outer is verified first (exactly where possible, by
// sampling otherwise); failure throws ContainmentUnverified. The two volume
// estimates use disjoint stream ranges, so they are independent and the
// combined standard error is valid.
struct InclusionResult {
  EstimateCI volume_inner;
  EstimateCI volume_outer;
  double difference = 0.0;  // inner mean - outer mean
  double difference_std_error = 0.0;
  std::uint64_t containment_samples = 0;
};

InclusionResult inclusion_experiment(const BodyModel& inner,
                                     const BodyModel& outer, std::uint64_t n,
                                     std::uint64_t reps, std::uint64_t seed);

}  // namespace randpoly
