#include <benchmark/benchmark.h>

#include "qshift/experiment.hpp"
#include "qshift/qalgebra.hpp"
#include "qshift/spectral.hpp"

using namespace qshift;

static void BM_QCommutatorResidual(benchmark::State& state) {
  const qalgebra::FockSpace space(static_cast<int>(state.range(0)));
  const qalgebra::QDeformation deform(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qalgebra::verify_q_commutator(space, deform));
  }
}
BENCHMARK(BM_QCommutatorResidual)->Arg(8)->Arg(32)->Arg(64);

static void BM_CorrelationFunction(benchmark::State& state) {
  const qalgebra::FockSpace space(static_cast<int>(state.range(0)));
  const qalgebra::QDeformation deform(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qalgebra::correlation_function({2.0, 0.0}, deform, 1.0, 1.0, space));
  }
}
BENCHMARK(BM_CorrelationFunction)->Arg(32)->Arg(128);

static void BM_SynthField(benchmark::State& state) {
  const hetsim::SimConfig cfg{1e6, state.range(0) / 1e6, 1e5, 42};
  const auto noise = hetsim::PhaseNoiseProcess::wiener(50e3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetsim::synth_field(cfg, 1e-3, 1e5, noise));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SynthField)->Arg(1 << 14)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Photodetect(benchmark::State& state) {
  const hetsim::SimConfig cfg{1e6, 0.1, 1e5, 42};
  const auto pair = hetsim::lock_pair(cfg, 1e-3, 2e-3, hetsim::PhaseNoiseProcess::wiener(50e3),
                                      hetsim::PhaseNoiseProcess::locked_residual(4e-3, 1e4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetsim::photodetect(pair.master, pair.slave, 5.0, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_Photodetect)->Unit(benchmark::kMillisecond);

static void BM_PeriodogramPeak(benchmark::State& state) {
  const hetsim::SimConfig cfg{1e6, 0.1, 1e5, 42};
  const auto pair = hetsim::lock_pair(cfg, 1e-3, 2e-3, hetsim::PhaseNoiseProcess::wiener(50e3),
                                      hetsim::PhaseNoiseProcess::locked_residual(4e-3, 1e4));
  const auto rec = hetsim::photodetect(pair.master, pair.slave, 5.0, 1.0);
  for (auto _ : state) {
    const auto psd = spectral::periodogram(rec, spectral::Window::hann);
    benchmark::DoNotOptimize(spectral::peak_frequency(psd, {{95e3, 105e3}}));
  }
}
BENCHMARK(BM_PeriodogramPeak)->Unit(benchmark::kMillisecond);

static void BM_FullPowerPoint(benchmark::State& state) {
  const hetsim::SimConfig cfg{1e6, 0.1, 1e5, 42};
  const hetsim::SweepSettings sweep{};
  const hetsim::DetectorSettings det{};
  hetsim::AnalysisSettings ana;
  ana.search_band = std::make_pair(95e3, 105e3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hetsim::run_experiment(cfg, {2e-3}, hetsim::PhaseNoiseProcess::wiener(50e3),
                               hetsim::PhaseNoiseProcess::locked_residual(4e-3, 1e4), sweep,
                               det, ana));
  }
}
BENCHMARK(BM_FullPowerPoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
