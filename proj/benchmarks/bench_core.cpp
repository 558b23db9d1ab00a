#include "decaylab/chebyshev.hpp"
#include "decaylab/decomposition.hpp"
#include "decaylab/lattice.hpp"
#include "decaylab/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace decaylab;

namespace {

ModelParams bench_params(int which) {
    return which == 0 ? ModelParams::make(ModelKind::SemiInfiniteEndpoint, -0.4, 0.5)
                      : ModelParams::make(ModelKind::InfiniteSideCoupled, -0.5, 0.4);
}

void BM_SolveSpectrum(benchmark::State& state) {
    const ModelParams p = bench_params(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(p));
}
BENCHMARK(BM_SolveSpectrum)->Arg(0)->Arg(1);

void BM_EdgeBackground(benchmark::State& state) {
    const Decomposition dec(bench_params(static_cast<int>(state.range(0))));
    const double t = static_cast<double>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(dec.edge(BandEdge::Lower, t));
}
BENCHMARK(BM_EdgeBackground)->ArgsProduct({{0, 1}, {1, 10, 100, 1000}});

void BM_Diagonalize(benchmark::State& state) {
    const FiniteLattice lat = FiniteLattice::make(bench_params(1), static_cast<int>(state.range(0)));
    const auto backend = state.range(1) == 0 ? EigenBackend::Tridiagonal : EigenBackend::Dense;
    for (auto _ : state) benchmark::DoNotOptimize(diagonalize(lat, backend));
}
BENCHMARK(BM_Diagonalize)->Args({1024, 0})->Args({2048, 0})->Args({4096, 0})->Args({1024, 1})->Unit(benchmark::kMillisecond);

void BM_ChebyshevSetup(benchmark::State& state) {
    const FiniteLattice lat = FiniteLattice::make(bench_params(0), 2048);
    for (auto _ : state) benchmark::DoNotOptimize(ChebyshevPropagator(lat, 400.0));
}
BENCHMARK(BM_ChebyshevSetup)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
