#include <benchmark/benchmark.h>

#include "aprs/dyadic.hpp"
#include "aprs/initial_data.hpp"
#include "aprs/norms.hpp"
#include "aprs/operators.hpp"
#include "aprs/paraproduct.hpp"
#include "aprs/transform.hpp"

using namespace aprs;

namespace {

SpectralField bench_field(int n, std::uint64_t seed) {
    auto lat = make_lattice(n, n);
    FieldRecipe rec;
    rec.band_h = lat->dealias_k_h();
    rec.band_v = lat->dealias_k_v();
    return seeded_field(lat, seed, rec);
}

void BM_TransformRoundTrip(benchmark::State& state) {
    SpectralField f = bench_field(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        auto g = transform_to_physical(f);
        benchmark::DoNotOptimize(transform_to_spectral(g, f.lattice_ptr()));
    }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(16)->Arg(32);

void BM_MultiplyDealiased(benchmark::State& state) {
    SpectralField f = bench_field(static_cast<int>(state.range(0)), 1);
    SpectralField g = bench_field(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(multiply_dealiased(f, g));
}
BENCHMARK(BM_MultiplyDealiased)->Arg(16)->Arg(32);

void BM_DyadicLadder(benchmark::State& state) {
    SpectralField f = bench_field(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(make_ladder(f));
}
BENCHMARK(BM_DyadicLadder)->Arg(16)->Arg(32);

void BM_BesovNorm(benchmark::State& state) {
    SpectralField f = bench_field(static_cast<int>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f));
}
BENCHMARK(BM_BesovNorm)->Arg(16)->Arg(32);

void BM_LerayProjectEps(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SpectralField u1 = bench_field(n, 5), u2 = bench_field(n, 6), u3 = bench_field(n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(leray_project_eps(u1, u2, u3, 0.25));
}
BENCHMARK(BM_LerayProjectEps)->Arg(16)->Arg(32);

void BM_BonyDecompose(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SpectralField u = bench_field(n, 8), w = bench_field(n, 9);
    for (auto _ : state) benchmark::DoNotOptimize(bony_decompose(u, w));
}
BENCHMARK(BM_BonyDecompose)->Arg(16);

}  // namespace
