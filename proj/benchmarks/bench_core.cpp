// Microbenchmarks for the numerical hot paths: Bessel K evaluation, the FPA
// closed forms, the two routes to the DPA residual integral, and raw Monte
// Carlo throughput.

#include "noma/analytic.hpp"
#include "noma/mc.hpp"
#include "noma/model.hpp"
#include "noma/specfun.hpp"

#include <benchmark/benchmark.h>

namespace {

noma::SystemParams base_params() {
    noma::SystemParams p;
    p.ps_lin = noma::db_to_linear(15.0);
    p.sigma2_lin = noma::db_to_linear(-30.0);
    p.delta = 0.8;
    p.eta = 0.7;
    p.m = 1;
    p.d = 1.0;
    p.d1 = 1.0;
    p.d2 = 10.0;
    p.alpha = 2.0;
    p.r1 = 1.5;
    p.r2 = 0.5;
    p.sigma_e2 = 0.001;
    return p;
}

void bm_bessel_k(benchmark::State& state) {
    const int v = static_cast<int>(state.range(0));
    double z = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(noma::specfun::bessel_k(v, z));
        z = z < 500.0 ? z * 1.37 : 1e-3; // walk the series/asymptotic regimes
    }
}
BENCHMARK(bm_bessel_k)->Arg(0)->Arg(1)->Arg(4);

void bm_fpa_user1(benchmark::State& state) {
    noma::SystemParams p = base_params();
    p.m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(noma::analytic::fpa_outage_user1(p));
}
BENCHMARK(bm_fpa_user1)->Arg(1)->Arg(3);

void bm_fpa_user2(benchmark::State& state) {
    const noma::SystemParams p = base_params();
    for (auto _ : state) benchmark::DoNotOptimize(noma::analytic::fpa_outage_user2(p));
}
BENCHMARK(bm_fpa_user2);

void bm_dpa_user1_chebyshev(benchmark::State& state) {
    const noma::SystemParams p = base_params();
    const int j = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(noma::analytic::dpa_outage_user1(p, j));
}
BENCHMARK(bm_dpa_user1_chebyshev)->Arg(30)->Arg(64);

void bm_upsilon_direct(benchmark::State& state) {
    const noma::SystemParams p = base_params();
    for (auto _ : state) benchmark::DoNotOptimize(noma::analytic::upsilon_ii_direct(p));
}
BENCHMARK(bm_upsilon_direct);

void bm_mc_trials(benchmark::State& state) {
    const noma::SystemParams p = base_params();
    const std::uint64_t trials = 1u << 16;
    const noma::mc::RngSpec spec{42, 1u << 16};
    for (auto _ : state) {
        benchmark::DoNotOptimize(noma::mc::run_campaign(p, trials, spec, 0, 1));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(trials));
}
BENCHMARK(bm_mc_trials);

} // namespace

BENCHMARK_MAIN();
