#include "randpoly/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "randpoly/errors.hpp"

namespace randpoly {

namespace {

// Stream layout: replications of the primary estimate use streams
// [0, reps); a second independent estimate in the same experiment starts at
// kSecondaryStreamBase; containment checks use kContainmentStream.
constexpr std::uint64_t kSecondaryStreamBase = std::uint64_t{1} << 32;
constexpr std::uint64_t kContainmentStream = std::uint64_t{1} << 33;

constexpr std::uint64_t kMaxRedrawAttempts = 10000;
constexpr std::uint64_t kContainmentSamples = 10000;

// Runs body(r) for every replication index, possibly on several threads.
// Replications own their stream, results go into index-addressed buffers,
// so the outcome is identical for every worker count.
template <typename Body>
void run_replications(std::uint64_t reps, const Body& body) {
  const std::uint64_t workers =
      std::min<std::uint64_t>(worker_count(), reps);
  if (workers <= 1) {
    for (std::uint64_t r = 0; r < reps; ++r) body(r);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::uint64_t first_error_rep = ~std::uint64_t{0};

  auto work = [&]() {
    while (true) {
      const std::uint64_t r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= reps) return;
      try {
        body(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (r < first_error_rep) {
          first_error_rep = r;
          first_error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

EstimateCI summarize(const std::vector<double>& values, std::uint64_t seed,
                     double wall_time) {
  const std::uint64_t reps = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(reps);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  EstimateCI est;
  est.mean = mean;
  est.std_error = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) /
                                       static_cast<double>(reps))
                           : 0.0;
  est.reps = reps;
  est.seed = seed;
  est.wall_time_seconds = wall_time;
  return est;
}

// Draws n points, redrawing whole sets whose hull is degenerate (measure
// zero for the supported models, so in practice this fires never or once).
HullComplex sample_hull(const BodyModel& model, std::uint64_t n,
                        PhiloxRng& rng, std::uint64_t& degenerate_draws) {
  for (std::uint64_t attempt = 0; attempt < kMaxRedrawAttempts; ++attempt) {
    std::vector<Vector> points;
    points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
      points.push_back(sample_one(model, rng));
    try {
      return convex_hull(points);
    } catch (const DegenerateInput&) {
      ++degenerate_draws;
    }
  }
  throw Error("mc_hull_summary: every redraw produced a degenerate set");
}

struct HullRun {
  std::vector<std::vector<double>> f_values;  // [j][rep], only available j
  std::vector<int> face_dims;                 // which j the rows above are
  std::vector<double> volumes;
  std::uint64_t degenerate_draws = 0;
  double wall_time = 0.0;
};

HullRun run_hull_replications(const BodyModel& model, std::uint64_t n,
                              std::uint64_t reps, std::uint64_t seed,
                              std::uint64_t stream_base) {
  const int d = model.dim();
  if (n < static_cast<std::uint64_t>(d) + 1)
    throw std::invalid_argument("hull estimate: n < d + 1");
  if (reps < 2) throw std::invalid_argument("hull estimate: reps < 2");

  HullRun run;
  for (int j = 0; j < d; ++j) {
    if (j == 0 || j == d - 1 || d == 3) run.face_dims.push_back(j);
  }
  run.f_values.assign(run.face_dims.size(),
                      std::vector<double>(static_cast<std::size_t>(reps), 0.0));
  run.volumes.assign(static_cast<std::size_t>(reps), 0.0);
  std::vector<std::uint64_t> degenerate(static_cast<std::size_t>(reps), 0);

  const auto start = std::chrono::steady_clock::now();
  run_replications(reps, [&](std::uint64_t r) {
    PhiloxRng rng(seed, stream_base + r);
    const HullComplex hull =
        sample_hull(model, n, rng, degenerate[static_cast<std::size_t>(r)]);
    for (std::size_t row = 0; row < run.face_dims.size(); ++row) {
      const auto& entry =
          hull.f_vector[static_cast<std::size_t>(run.face_dims[row])];
      run.f_values[row][static_cast<std::size_t>(r)] =
          static_cast<double>(entry.value());
    }
    run.volumes[static_cast<std::size_t>(r)] = hull.volume;
  });
  run.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  for (std::uint64_t c : degenerate) run.degenerate_draws += c;
  return run;
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("RANDPOLY_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0')
      return static_cast<unsigned>(std::clamp<unsigned long>(v, 1, 256));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

HullMcSummary mc_hull_summary(const BodyModel& model, std::uint64_t n,
                              std::uint64_t reps, std::uint64_t seed) {
  const HullRun run = run_hull_replications(model, n, reps, seed, 0);
  HullMcSummary summary;
  summary.dim = model.dim();
  summary.per_face_dim.assign(static_cast<std::size_t>(model.dim()),
                              std::nullopt);
  for (std::size_t row = 0; row < run.face_dims.size(); ++row)
    summary.per_face_dim[static_cast<std::size_t>(run.face_dims[row])] =
        summarize(run.f_values[row], seed, run.wall_time);
  summary.volume = summarize(run.volumes, seed, run.wall_time);
  summary.degenerate_draws = run.degenerate_draws;
  return summary;
}

FVectorEstimate mc_expected_fvector(const BodyModel& model, std::uint64_t n,
                                    std::uint64_t reps, std::uint64_t seed) {
  HullMcSummary summary = mc_hull_summary(model, n, reps, seed);
  FVectorEstimate est;
  est.dim = summary.dim;
  est.per_face_dim = std::move(summary.per_face_dim);
  est.degenerate_draws = summary.degenerate_draws;
  return est;
}

VolumeEstimate mc_expected_volume(const BodyModel& model, std::uint64_t n,
                                  std::uint64_t reps, std::uint64_t seed) {
  HullMcSummary summary = mc_hull_summary(model, n, reps, seed);
  VolumeEstimate est;
  est.volume = summary.volume;
  est.degenerate_draws = summary.degenerate_draws;
  return est;
}

namespace {

struct FacetProbRun {
  std::vector<double> scaled_values;  // per replication, binomial included
  std::uint64_t degenerate_tuples = 0;
  double wall_time = 0.0;
};

FacetProbRun run_facet_prob_replications(const BodyModel& model,
                                         std::uint64_t n, std::uint64_t reps,
                                         std::uint64_t sub_reps,
                                         std::uint64_t seed) {
  const int d = model.dim();
  if (n < static_cast<std::uint64_t>(d) + 1)
    throw std::invalid_argument("facet_probability_estimator: n < d + 1");
  if (reps < 2)
    throw std::invalid_argument("facet_probability_estimator: reps < 2");
  if (model.kind() == ModelKind::polytope_uniform && sub_reps == 0)
    throw std::invalid_argument(
        "facet_probability_estimator: sub_reps == 0 for polytope");

  FacetProbRun run;
  run.scaled_values.assign(static_cast<std::size_t>(reps), 0.0);
  std::vector<std::uint64_t> degenerate(static_cast<std::size_t>(reps), 0);
  const double power = static_cast<double>(n - static_cast<std::uint64_t>(d));
  double binom = 1.0;
  for (int i = 1; i <= d; ++i)
    binom = binom * static_cast<double>(n - static_cast<std::uint64_t>(d) +
                                        static_cast<std::uint64_t>(i)) /
            static_cast<double>(i);

  const auto start = std::chrono::steady_clock::now();
  run_replications(reps, [&](std::uint64_t r) {
    PhiloxRng rng(seed, r);
    std::vector<Vector> pts;
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    detail::HyperplaneWorkspace ws;
    for (std::uint64_t attempt = 0;; ++attempt) {
      if (attempt >= kMaxRedrawAttempts)
        throw Error("facet_probability_estimator: degenerate redraw loop");
      pts.clear();
      for (int i = 0; i < d; ++i) pts.push_back(sample_one(model, rng));
      try {
        const Hyperplane h =
            detail::affine_hyperplane_indexed(pts, idx.data(), d, ws);
        const HalfspaceMasses masses = halfspace_mass(model, h, sub_reps, rng);
        run.scaled_values[static_cast<std::size_t>(r)] =
            binom *
            (std::pow(masses.minus, power) + std::pow(masses.plus, power));
        break;
      } catch (const DegenerateInput&) {
        ++degenerate[static_cast<std::size_t>(r)];
      }
    }
  });
  run.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  for (std::uint64_t c : degenerate) run.degenerate_tuples += c;
  return run;
}

}  // namespace

FacetProbabilityEstimate facet_probability_estimator(const BodyModel& model,
                                                     std::uint64_t n,
                                                     std::uint64_t reps,
                                                     std::uint64_t sub_reps,
                                                     std::uint64_t seed) {
  const FacetProbRun run =
      run_facet_prob_replications(model, n, reps, sub_reps, seed);
  FacetProbabilityEstimate est;
  est.facets = summarize(run.scaled_values, seed, run.wall_time);
  est.degenerate_tuples = run.degenerate_tuples;
  return est;
}

const char* to_string(SweepMethod method) {
  switch (method) {
    case SweepMethod::quadrature: return "quadrature";
    case SweepMethod::hull: return "hull";
    case SweepMethod::facet_probability: return "facet-prob";
  }
  return "unknown";
}

std::optional<SweepMethod> parse_sweep_method(std::string_view name) {
  if (name == "quadrature") return SweepMethod::quadrature;
  if (name == "hull") return SweepMethod::hull;
  if (name == "facet-prob" || name == "facet_probability")
    return SweepMethod::facet_probability;
  return std::nullopt;
}

MonotonicityReport monotonicity_sweep(const BodyModel& model,
                                      const std::vector<std::uint64_t>& n_values,
                                      SweepMethod method, std::uint64_t reps,
                                      std::uint64_t seed,
                                      const SweepExtras& extras) {
  if (n_values.empty())
    throw std::invalid_argument("monotonicity_sweep: empty n grid");
  const int d = model.dim();
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < static_cast<std::uint64_t>(d) + 1)
      throw std::invalid_argument("monotonicity_sweep: n < d + 1");
    if (i > 0 && n_values[i] <= n_values[i - 1])
      throw std::invalid_argument("monotonicity_sweep: n grid not increasing");
  }

  MonotonicityReport report;
  report.method = method;
  report.n_values = n_values;
  report.seed = seed;
  const std::size_t count = n_values.size();
  report.values.resize(count);
  report.std_errors.resize(count);

  if (method == SweepMethod::quadrature) {
    FacetCalculus::Options opts;
    opts.e_delta_reps = extras.e_delta_reps;
    opts.e_delta_seed = seed;
    opts.rel_tol = extras.tol;
    const FacetCalculus calc(model, opts);
    const double rel_se = calc.relative_std_error();
    for (std::size_t i = 0; i < count; ++i) {
      report.values[i] = calc.expected_facets(n_values[i]);
      report.std_errors[i] = report.values[i] * rel_se;
    }
    report.reps = calc.e_delta_constant().reps;
    for (std::size_t i = 0; i + 1 < count; ++i) {
      const double diff = report.values[i + 1] - report.values[i];
      report.differences.push_back(diff);
      // The cached constant scales every value by the same factor, so its
      // error propagates to the difference, not to the sign.
      report.diff_std_errors.push_back(std::abs(diff) * rel_se);
    }
    report.nondecreasing = true;
    for (double diff : report.differences)
      if (!(diff >= -1e-10)) report.nondecreasing = false;
    if (extras.concavity_certificate && d >= 2)
      report.concavity = concavity_check(calc.profile());
  } else {
    report.reps = reps;
    std::vector<std::vector<double>> per_rep(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (method == SweepMethod::hull) {
        const HullRun run =
            run_hull_replications(model, n_values[i], reps, seed, 0);
        const EstimateCI est = summarize(
            run.f_values[run.face_dims.size() - 1], seed, run.wall_time);
        report.values[i] = est.mean;
        report.std_errors[i] = est.std_error;
        per_rep[i] = run.f_values[run.face_dims.size() - 1];
      } else {
        // Stream r serves replication r at every n (common random numbers),
        // so consecutive estimates are positively coupled.
        const FacetProbRun run = run_facet_prob_replications(
            model, n_values[i], reps, extras.sub_reps, seed);
        const EstimateCI est =
            summarize(run.scaled_values, seed, run.wall_time);
        report.values[i] = est.mean;
        report.std_errors[i] = est.std_error;
        per_rep[i] = run.scaled_values;
      }
    }

    // Difference errors from the paired per-replication values.
    for (std::size_t i = 0; i + 1 < count; ++i) {
      const double diff = report.values[i + 1] - report.values[i];
      report.differences.push_back(diff);
      std::vector<double> paired(per_rep[i].size());
      for (std::size_t r = 0; r < paired.size(); ++r)
        paired[r] = per_rep[i + 1][r] - per_rep[i][r];
      report.diff_std_errors.push_back(summarize(paired, seed, 0.0).std_error);
    }
    report.nondecreasing = true;
    for (std::size_t i = 0; i + 1 < count; ++i)
      if (!(report.differences[i] >= -3.0 * report.diff_std_errors[i]))
        report.nondecreasing = false;
  }

  report.min_difference =
      report.differences.empty()
          ? 0.0
          : *std::min_element(report.differences.begin(),
                              report.differences.end());
  return report;
}

InclusionResult inclusion_experiment(const BodyModel& inner,
                                     const BodyModel& outer, std::uint64_t n,
                                     std::uint64_t reps, std::uint64_t seed) {
  if (inner.kind() == ModelKind::gaussian ||
      outer.kind() == ModelKind::gaussian)
    throw std::invalid_argument(
        "inclusion_experiment: needs bounded bodies (ball or polytope)");
  if (inner.dim() != outer.dim())
    throw std::invalid_argument("inclusion_experiment: dimension mismatch");

  InclusionResult result;

  // Verify inner subset outer before comparing anything.
  if (inner.kind() == ModelKind::ball_uniform &&
      outer.kind() == ModelKind::ball_uniform) {
    // Both are the unit ball.
  } else if (inner.kind() == ModelKind::ball_uniform) {
    for (const Halfspace& h : outer.hpolytope().halfspaces()) {
      if (h.a.norm() > h.b + 1e-9 * (1.0 + std::abs(h.b)))
        throw ContainmentUnverified(
            "inclusion_experiment: unit ball exceeds a polytope halfspace");
    }
  } else {
    PhiloxRng rng(seed, kContainmentStream);
    for (std::uint64_t i = 0; i < kContainmentSamples; ++i) {
      const Vector x = sample_one(inner, rng);
      const bool inside = outer.kind() == ModelKind::ball_uniform
                              ? x.norm() <= 1.0 + 1e-9
                              : outer.hpolytope().contains(x, 1e-9);
      if (!inside)
        throw ContainmentUnverified(
            "inclusion_experiment: sampled inner point left the outer body");
    }
    result.containment_samples = kContainmentSamples;
  }

  const HullRun inner_run = run_hull_replications(inner, n, reps, seed, 0);
  const HullRun outer_run =
      run_hull_replications(outer, n, reps, seed, kSecondaryStreamBase);
  result.volume_inner = summarize(inner_run.volumes, seed, inner_run.wall_time);
  result.volume_outer = summarize(outer_run.volumes, seed, outer_run.wall_time);
  result.difference = result.volume_inner.mean - result.volume_outer.mean;
  result.difference_std_error = std::hypot(result.volume_inner.std_error,
                                           result.volume_outer.std_error);
  return result;
}

}  // namespace randpoly
