#include <benchmark/benchmark.h>

#include "gl2lab/bt_tree.hpp"
#include "gl2lab/curve_count.hpp"
#include "gl2lab/hecke.hpp"
#include "gl2lab/norm_basechange.hpp"
#include "gl2lab/sampling.hpp"
#include "gl2lab/test_functions.hpp"

using namespace gl2lab;

static void BM_GaloisRingMul(benchmark::State& state) {
  auto ctx = LocalContext::make(2, static_cast<int>(state.range(0)), 20);
  auto a = GaloisRingElement::generator(ctx);
  auto b = GaloisRingElement::from_int(ctx, 3) + a;
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_GaloisRingMul)->Arg(1)->Arg(3);

static void BM_EnumerateVertices(benchmark::State& state) {
  auto ctx = LocalContext::make(3, 1, 12);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices(ctx, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateVertices)->Arg(3)->Arg(5);

static void BM_OrbitalRatio(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto ctx = LocalContext::make(3, 1, 2 * n + 6);
  Rng rng(1);
  const auto g = random_probe(ctx, rng, ProbeKind::EllFinite, n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(orbital_ratio(g, n));
}
BENCHMARK(BM_OrbitalRatio)->Arg(1)->Arg(2);

static void BM_TowerAverage(benchmark::State& state) {
  auto ctx = LocalContext::make(static_cast<int>(state.range(0)), 1, 20);
  Rng rng(2);
  const auto g = random_probe(ctx, rng, ProbeKind::EllFinite, 2);
  for (auto _ : state) benchmark::DoNotOptimize(tower_average(g, 1));
}
BENCHMARK(BM_TowerAverage)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SigmaOrbits(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_orbits(2, static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
  }
}
BENCHMARK(BM_SigmaOrbits)->Args({2, 1})->Args({2, 2})->Unit(benchmark::kMillisecond);

static void BM_CurveCensus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_curves(state.range(0)));
}
BENCHMARK(BM_CurveCensus)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_BoundaryEnumeration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(boundary_by_enumeration(7, 1, 1, 3));
}
BENCHMARK(BM_BoundaryEnumeration)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
