// Microbenchmarks for the hot paths: Liouvillian assembly, steady-state
// solves (sparse and dense backends), the weak-drive amplitude solution and
// the derived observables.  Run the optimized build; Debug timings are not
// representative.

#include <benchmark/benchmark.h>

#include "bjc/analytic.hpp"
#include "bjc/dynamics.hpp"
#include "bjc/model.hpp"
#include "bjc/spectra.hpp"

namespace {

using namespace bjc;

ModelParams reference_params(int n_cut) {
    ModelParams p;
    p.delta = 0.5;
    p.g = 1.33;
    p.chi = 8.0;
    p.omega = 0.1;
    p.kappa = 1.0;
    p.gamma = 1.0;
    p.j = 0.0;
    p.n_cut = n_cut;
    return p;
}

void bm_liouvillian_assembly(benchmark::State& state) {
    const ModelParams p = reference_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(liouvillian(p));
    }
    state.SetLabel("n_cut=" + std::to_string(state.range(0)));
}
BENCHMARK(bm_liouvillian_assembly)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_steady_state_sparse(benchmark::State& state) {
    ModelParams p = reference_params(static_cast<int>(state.range(0)));
    const Superoperator l = liouvillian(p);
    SteadyStateOptions opts;
    opts.backend = SteadyStateBackend::sparse_lu;
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state(l, opts));
    }
    state.SetLabel("n_cut=" + std::to_string(state.range(0)));
}
BENCHMARK(bm_steady_state_sparse)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_steady_state_dense(benchmark::State& state) {
    ModelParams p = reference_params(static_cast<int>(state.range(0)));
    const Superoperator l = liouvillian(p);
    SteadyStateOptions opts;
    opts.backend = SteadyStateBackend::dense_lu;
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state(l, opts));
    }
    state.SetLabel("n_cut=" + std::to_string(state.range(0)));
}
BENCHMARK(bm_steady_state_dense)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_amplitude_solve(benchmark::State& state) {
    const ModelParams p = reference_params(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_amplitudes(p));
    }
}
BENCHMARK(bm_amplitude_solve);

void bm_g2_zero(benchmark::State& state) {
    const ModelParams p = reference_params(5);
    const DensityMatrix rho = steady_state(liouvillian(p));
    for (auto _ : state) {
        benchmark::DoNotOptimize(g2_zero(rho, Mode::cw));
    }
}
BENCHMARK(bm_g2_zero);

void bm_two_photon_eigenvalues(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_photon_eigenvalues(10.0, 8.0));
    }
}
BENCHMARK(bm_two_photon_eigenvalues);

}  // namespace

BENCHMARK_MAIN();
