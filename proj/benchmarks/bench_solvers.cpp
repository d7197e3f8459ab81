#include <benchmark/benchmark.h>

#include "aprs/coupled.hpp"
#include "aprs/integrator.hpp"
#include "aprs/ns_aniso.hpp"
#include "aprs/primitive.hpp"

using namespace aprs;

namespace {

RunConfig bench_config(int n, SystemKind sys) {
    RunConfig cfg;
    cfg.lattice = make_lattice(n, n);
    cfg.system = sys;
    cfg.nu_h = 1.0;
    cfg.gamma = 3.0;
    if (sys == SystemKind::ns_aniso) cfg.eps = 0.25;
    cfg.init.amplitude = 0.05;
    cfg.init.mean_amplitude = 0.05;
    return cfg;
}

void BM_PrimitiveRhs(benchmark::State& state) {
    RunConfig cfg = bench_config(static_cast<int>(state.range(0)), SystemKind::primitive);
    FlowState y = prepared_initial_state(cfg);
    VelocityState ut = make_hydrostatic_state(y[2], y[3]);
    for (auto _ : state)
        benchmark::DoNotOptimize(rhs_primitive_fluct(ut, y[0], y[1], cfg));
}
BENCHMARK(BM_PrimitiveRhs)->Arg(16)->Arg(32);

void BM_NsAnisoRhs(benchmark::State& state) {
    RunConfig cfg = bench_config(static_cast<int>(state.range(0)), SystemKind::ns_aniso);
    FlowState y = prepared_initial_state(cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(rhs_ns_aniso(y[2], y[3], y[4], y[0], y[1], cfg));
}
BENCHMARK(BM_NsAnisoRhs)->Arg(16)->Arg(32);

void BM_CoupledStep(benchmark::State& state) {
    RunConfig cfg = bench_config(static_cast<int>(state.range(0)), SystemKind::primitive);
    FlowState y = prepared_initial_state(cfg);
    auto sys = make_coupled_system(cfg);
    for (auto _ : state) {
        FlowState copy = y;
        ifrk4_step(*sys, copy, 1e-4);
        benchmark::DoNotOptimize(copy);
    }
}
BENCHMARK(BM_CoupledStep)->Arg(16)->Arg(32);

}  // namespace
