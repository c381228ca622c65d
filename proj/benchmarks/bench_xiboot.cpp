#include <benchmark/benchmark.h>

#include <cmath>

#include "xiboot/bootstrap.hpp"
#include "xiboot/metrics.hpp"
#include "xiboot/models.hpp"
#include "xiboot/xi.hpp"

using namespace xiboot;

namespace {

PairedSample gaussian_sample(std::size_t n) {
  Rng rng(1234);
  return generate_sample(ModelSpec::gaussian(0.3), n, rng);
}

}  // namespace

static void BM_Xi(benchmark::State& state) {
  const auto sample = gaussian_sample(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(seed++);
    benchmark::DoNotOptimize(xi(sample, rng));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Xi)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

static void BM_DrawSubsample(benchmark::State& state) {
  const auto sample = gaussian_sample(100000);
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_subsample(sample, m, rng));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DrawSubsample)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_BootstrapDistribution(benchmark::State& state) {
  const auto sample = gaussian_sample(10000);
  BootstrapConfig cfg;
  cfg.m = static_cast<std::size_t>(state.range(0));
  cfg.replicates = 200;
  cfg.seed = 99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bootstrap_distribution(sample, cfg));
  }
}
BENCHMARK(BM_BootstrapDistribution)->Arg(32)->Arg(100)->Arg(316)->Arg(1000);

static void BM_KolmogorovDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal() * 1.1;
  const EmpiricalDistribution da(a), db(b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kolmogorov_distance(da, db));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KolmogorovDistance)
    ->RangeMultiplier(4)
    ->Range(500, 32000)
    ->Complexity();

BENCHMARK_MAIN();
