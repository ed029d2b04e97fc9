#include <benchmark/benchmark.h>

#include "mesoent/entanglement.hpp"
#include "mesoent/experiment.hpp"
#include "mesoent/mesoscopic.hpp"
#include "mesoent/microscopic_oracle.hpp"

namespace {

using namespace mesoent;

void BM_Expm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix a = ComplexMatrix::Random(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(numerics::expm(a, 1.3));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(8)->Arg(16);

void BM_BuildLiouvillian(benchmark::State& state) {
  const auto p = ModelParams::make(1.0, 0.5, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(p));
}
BENCHMARK(BM_BuildLiouvillian);

void BM_ExtractModeGenerator(benchmark::State& state) {
  const auto p = ModelParams::make(1.0, 0.5, 0.3);
  const auto l = build_liouvillian(p);
  for (auto _ : state) benchmark::DoNotOptimize(extract_mode_generator(l, p));
}
BENCHMARK(BM_ExtractModeGenerator);

void BM_PropagateAndNegativity(benchmark::State& state) {
  const auto p = ModelParams::make(1.0, 0.1, 0.5);
  const auto g = build_meso_generator(p);
  const auto s0 = initial_state(p, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(propagate(s0, g, 2.5)));
}
BENCHMARK(BM_PropagateAndNegativity);

void BM_RunCurve(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.t_steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_curve(cfg));
}
BENCHMARK(BM_RunCurve)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_WeylFiniteN(benchmark::State& state) {
  const auto st = build_thermal_state(ModelParams::make(1.0, 1.0, 0.0));
  const auto& x = fluctuation_observables()[0];
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_expectation_finite_N(x, n, st));
}
BENCHMARK(BM_WeylFiniteN)->Arg(100)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
