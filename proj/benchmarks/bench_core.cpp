#include <benchmark/benchmark.h>

#include "mvop/family.hpp"
#include "mvop/special_family.hpp"
#include "mvop/specfun.hpp"
#include "mvop/systems.hpp"

using namespace mvop;

static void BM_BesselK(benchmark::State& state) {
  const Real z = state.range(0) / 10.0L;
  Real nu = 0.3L;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_k(nu, z));
    nu += 1e-9L;
  }
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(20)->Arg(300);

static void BM_MatPower(benchmark::State& state) {
  const CMatrix b = build_dg1({Complex(1), Complex(2)}, 1).B;
  Real x = 2.5L;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_power_log(b, x));
    x += 1e-9L;
  }
}
BENCHMARK(BM_MatPower);

static void BM_FamilyBuild(benchmark::State& state) {
  const WeightSpec spec = dg1_weight_spec({Complex(1)}, 1, 1);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_family(spec, n_max));
}
BENCHMARK(BM_FamilyBuild)->DenseRange(2, 6, 2);

static void BM_LaxChain(benchmark::State& state) {
  const Family fam = build_family(dg1_weight_spec({Complex(1)}, 1, 1), 6);
  for (auto _ : state) benchmark::DoNotOptimize(compute_lax_chain(fam));
}
BENCHMARK(BM_LaxChain);

static void BM_Orthogonality(benchmark::State& state) {
  const Family fam = build_family(dg1_weight_spec({Complex(1)}, 1, 1), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orthogonality_residual(fam, 1e-8L));
}
BENCHMARK(BM_Orthogonality)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Evolve(benchmark::State& state) {
  const WeightSpec spec = dg1_weight_spec({Complex(1)}, 1, 0.5L);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_from_spec(spec, 1, 0.5L, 2));
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

static void BM_Bootstrap(benchmark::State& state) {
  WeightSpec spec = dg1_weight_spec({Complex(1)}, 1, 1);
  spec.normalize_gamma0 = true;
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_discrete(spec, 4));
}
BENCHMARK(BM_Bootstrap);
BENCHMARK_MAIN();
