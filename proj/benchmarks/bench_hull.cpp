#include <benchmark/benchmark.h>

#include <vector>

#include "randpoly/distributions.hpp"
#include "randpoly/hull.hpp"
#include "randpoly/montecarlo.hpp"

namespace {

// Exhaustive enumeration is O(n^d * n); these curves show where the
// experiment budgets land for each dimension.
void BM_ConvexHull(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  const auto model = randpoly::BodyModel::gaussian(d);
  const auto points = randpoly::sample(model, n, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randpoly::convex_hull(points));
  }
  state.SetComplexityN(state.range(1));
}

void BM_HullReplications(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto model = randpoly::BodyModel::ball(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randpoly::mc_hull_summary(model, n, 50, 7));
  }
}

void BM_FacetProbability(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto model = randpoly::BodyModel::ball(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randpoly::facet_probability_estimator(model, n, 200, 0, 7));
  }
}

}  // namespace

BENCHMARK(BM_ConvexHull)
    ->Args({2, 16})
    ->Args({2, 64})
    ->Args({2, 256})
    ->Args({3, 16})
    ->Args({3, 32})
    ->Args({3, 64})
    ->Args({4, 16})
    ->Args({4, 24})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK(BM_HullReplications)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK(BM_FacetProbability)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
