#include <benchmark/benchmark.h>

#include <omp.h>

#include "cohspec/scan.hpp"

using namespace cohspec;

namespace {

ScanConfig delta_scan(int points) {
    ScanConfig cfg;
    cfg.transition.fg = HalfInt{6};
    cfg.transition.fe = HalfInt{8};
    cfg.bfield = 0.01;
    cfg.points = points;
    cfg.observables = {ObservableKind::absorption, ObservableKind::fwm_power, ObservableKind::linear_absorption};
    return cfg;
}

ScanConfig bfield_scan(int points) {
    ScanConfig cfg = delta_scan(points);
    cfg.variable = ScanVariable::bfield;
    cfg.lo = -0.03;
    cfg.hi = 0.03;
    cfg.observables = {ObservableKind::absorption};
    return cfg;
}

void BM_DeltaScanSerial(benchmark::State& state) {
    const ScanConfig cfg = delta_scan(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_scan_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DeltaScanParallel(benchmark::State& state) {
    const ScanConfig cfg = delta_scan(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_scan(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_BfieldScanSerial(benchmark::State& state) {
    const ScanConfig cfg = bfield_scan(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_scan_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BfieldScanParallel(benchmark::State& state) {
    const ScanConfig cfg = bfield_scan(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_scan(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_DeltaScanSerial)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DeltaScanParallel)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BfieldScanSerial)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BfieldScanParallel)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
