#include <benchmark/benchmark.h>

#include <cmath>

#include "randpoly/distributions.hpp"
#include "randpoly/facet_calculus.hpp"
#include "randpoly/quadrature.hpp"

namespace {

void BM_AdaptivePanel(benchmark::State& state) {
  const double width = std::pow(10.0, -static_cast<double>(state.range(0)));
  randpoly::QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  opt.split_points = {0.5};
  for (auto _ : state) {
    auto r = randpoly::integrate_adaptive(
        [width](double x) {
          const double t = (x - 0.5) / width;
          return std::exp(-0.5 * t * t);
        },
        0.0, 1.0, opt);
    benchmark::DoNotOptimize(r);
  }
}

// The cached section constant makes construction the expensive step; the
// per-n integral afterwards is the quantity the sweeps pay for.
void BM_ReducedIntegral(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  randpoly::FacetCalculus::Options opt;
  opt.e_delta_reps = 10000;
  const randpoly::FacetCalculus calc(randpoly::BodyModel::ball(d), opt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(calc.reduced_facet_integral(n));
  }
}

void BM_Quantile(benchmark::State& state) {
  const auto model = randpoly::BodyModel::ball(static_cast<int>(state.range(0)));
  double s = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(randpoly::projection_quantile(model, s));
    s += 0.0009;
    if (s >= 1.0) s -= 0.998;
  }
}

}  // namespace

BENCHMARK(BM_AdaptivePanel)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

BENCHMARK(BM_ReducedIntegral)
    ->Args({2, 10})
    ->Args({2, 100})
    ->Args({4, 10})
    ->Args({4, 100})
    ->Args({6, 100})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK(BM_Quantile)->Arg(2)->Arg(5)->Unit(benchmark::kMicrosecond);
