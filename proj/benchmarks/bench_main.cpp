#include <benchmark/benchmark.h>

#include "ersim/intensity.hpp"
#include "ersim/kernels.hpp"
#include "ersim/oracle.hpp"
#include "ersim/specfun.hpp"
#include "ersim/spinwave.hpp"

using namespace ersim;

namespace {

ModelParams smoke() {
  Config cfg = default_config();
  cfg["w0"] = "1";
  cfg["optical_depth_1"] = "6";
  cfg["pump_ratio"] = "0.8";
  cfg["delta_small_hz"] = "1.2e9";
  cfg["gamma_2_hz"] = "5.746e6";
  cfg["omega_1_hz"] = "1.4637e8";
  cfg["pulse_shape"] = "constant";
  return build_params(cfg);
}

void BM_BesselI0(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::bessel_i(0, x, true));
}
BENCHMARK(BM_BesselI0)->Arg(1)->Arg(15)->Arg(100);

void BM_KernelGs(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    z += 1e-6;
    if (z > 1.0) z = 0.0;
    benchmark::DoNotOptimize(kernels::kernel_gs({0.8, z * 0.8, 1.0, 0.2, 12.0}));
  }
}
BENCHMARK(BM_KernelGs);

void BM_FlippedDensity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(flipped_density(0.7, 8.0, 0.2));
}
BENCHMARK(BM_FlippedDensity);

void BM_Fig4CounterTrace(benchmark::State& state) {
  const ModelParams p = build_params(default_config());
  const auto times = uniform_times(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ers_trace(p, PulseShape::TruncatedGaussian, Geometry::Counter, times));
  }
}
BENCHMARK(BM_Fig4CounterTrace)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_OracleRun(benchmark::State& state) {
  const ModelParams p = smoke();
  const auto seed = prepared_seed(p, PulseShape::ConstantStep, Geometry::Counter);
  const int cells = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::simulate(p, PulseShape::ConstantStep, seed, {cells, 1.0 / 500, 51, {}}));
  }
  state.counters["steps/s"] = benchmark::Counter(500.0 * state.iterations(), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_OracleRun)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
