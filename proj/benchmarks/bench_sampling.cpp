#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "randpoly/distributions.hpp"
#include "randpoly/rng.hpp"

namespace {

randpoly::BodyModel cube_model(int d) {
  std::vector<randpoly::Halfspace> hs;
  for (int i = 0; i < d; ++i) {
    randpoly::Vector a = randpoly::Vector::Zero(d);
    a[i] = 1.0;
    hs.push_back({a, 1.0});
    hs.push_back({-a, 1.0});
  }
  return randpoly::BodyModel::polytope(
      randpoly::HPolytope::from_halfspaces(std::move(hs)));
}

void BM_PhiloxU64(benchmark::State& state) {
  randpoly::PhiloxRng rng(42, 0);
  std::uint64_t acc = 0;
  for (auto _ : state) {
    acc ^= rng();
  }
  benchmark::DoNotOptimize(acc);
}

void BM_PhiloxNormal(benchmark::State& state) {
  randpoly::PhiloxRng rng(42, 0);
  double acc = 0.0;
  for (auto _ : state) {
    acc += rng.normal();
  }
  benchmark::DoNotOptimize(acc);
}

void BM_SampleModel(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto model = state.range(1) == 0 ? randpoly::BodyModel::gaussian(d)
                                         : randpoly::BodyModel::ball(d);
  randpoly::PhiloxRng rng(7, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randpoly::sample_one(model, rng));
  }
}

// Monte Carlo branch only; the rotation-invariant models answer in closed
// form and are not worth timing.
void BM_PolytopeHalfspaceMass(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto model = cube_model(d);
  randpoly::Hyperplane h;
  h.normal = randpoly::Vector::Zero(d);
  h.normal[0] = 1.0;
  h.offset = 0.3;
  randpoly::PhiloxRng rng(11, 0);
  for (auto _ : state) {
    auto r = randpoly::halfspace_mass(model, h, 256, rng);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_PhiloxU64);
BENCHMARK(BM_PhiloxNormal);

BENCHMARK(BM_SampleModel)
    ->Args({2, 0})
    ->Args({8, 0})
    ->Args({2, 1})
    ->Args({8, 1});

BENCHMARK(BM_PolytopeHalfspaceMass)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
