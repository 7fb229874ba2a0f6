// Serial reference vs OpenMP kernels. Set OMP_NUM_THREADS to compare.

#include <benchmark/benchmark.h>

#include "entrec/oracle.hpp"
#include "entrec/scenarios.hpp"
#include "entrec/tomo.hpp"
#include "entrec/validation.hpp"

namespace {

using namespace entrec;

ExperimentConfig esd_config() {
  ExperimentConfig cfg;
  cfg.L_a = 98;
  cfg.L_1 = 390;
  return cfg;
}

void BM_sweep_serial(benchmark::State& st) {
  const auto cfg = esd_config();
  for (auto _ : st)
    benchmark::DoNotOptimize(sweep_serial(cfg, ScenarioId::esd, {0, 1000, 1}, st.range(0) != 0));
}

void BM_sweep_omp(benchmark::State& st) {
  const auto cfg = esd_config();
  for (auto _ : st) benchmark::DoNotOptimize(sweep(cfg, ScenarioId::esd, {0, 1000, 1}, st.range(0) != 0));
}

void BM_numeric_reduce_serial(benchmark::State& st) {
  const auto cfg = esd_config();
  const auto s = gate_state(cfg, GatePipeline::esd, 60, 120, 90);
  const auto sp = make_spectrum(cfg);
  const oracle::QuadratureGrid g{8.0, static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(oracle::numeric_reduce_serial(s, sp, sp, g));
}

void BM_numeric_reduce_omp(benchmark::State& st) {
  const auto cfg = esd_config();
  const auto s = gate_state(cfg, GatePipeline::esd, 60, 120, 90);
  const auto sp = make_spectrum(cfg);
  const oracle::QuadratureGrid g{8.0, static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(oracle::numeric_reduce(s, sp, sp, g));
}

void BM_mc_error_serial(benchmark::State& st) {
  const auto rho = scenario_recovery(ExperimentConfig{}, 195, 195).rho;
  const auto ps = tomo::ProjectionSet::standard();
  for (auto _ : st) benchmark::DoNotOptimize(tomo::mc_error_serial(rho, ps, 1000000, 50, 1, 0.0));
}

void BM_mc_error_omp(benchmark::State& st) {
  const auto rho = scenario_recovery(ExperimentConfig{}, 195, 195).rho;
  const auto ps = tomo::ProjectionSet::standard();
  for (auto _ : st) benchmark::DoNotOptimize(tomo::mc_error(rho, ps, 1000000, 50, 1, 0.0));
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_omp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_numeric_reduce_serial)->Arg(1025)->Arg(2049)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_numeric_reduce_omp)->Arg(1025)->Arg(2049)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_error_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_error_omp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
