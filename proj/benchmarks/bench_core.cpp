#include <benchmark/benchmark.h>

#include "ecs/elliptic.hpp"
#include "ecs/oracle.hpp"
#include "ecs/verifier.hpp"

using namespace ecs;

static void BM_LogThetaJet(benchmark::State& state) {
  const auto p = ModulusParams::from_q(static_cast<double>(state.range(0)) / 100.0);
  double x = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_theta_jet(x, p));
    x += 1e-9;
  }
  state.counters["n_max"] = static_cast<double>(p.n_max());
}
BENCHMARK(BM_LogThetaJet)->Arg(0)->Arg(25)->Arg(50)->Arg(75)->Arg(90);

static void BM_ApplyH(benchmark::State& state) {
  const auto p = ModulusParams::from_q(0.5);
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto cfg = sample_configuration(N, N / 2 + 1, 0.1, 1);
  const auto g = GeneralCoupling::main_family(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(apply_H_logform(cfg, g, p));
}
BENCHMARK(BM_ApplyH)->Arg(2)->Arg(5)->Arg(10);

static void BM_OracleH(benchmark::State& state) {
  const auto p = ModulusParams::from_q(0.5);
  const auto cfg = sample_configuration(5, 3, 0.1, 1);
  const auto g = GeneralCoupling::main_family(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(fd_apply_H(cfg, g, p));
}
BENCHMARK(BM_OracleH);

static void BM_SweepCell(benchmark::State& state) {
  SweepGrid grid;
  grid.sizes = {{5, 3}};
  grid.lambdas = {1.5};
  grid.qs = {0.5};
  grid.configs = 20;
  grid.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(grid));
}
BENCHMARK(BM_SweepCell)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
