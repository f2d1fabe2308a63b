#include <benchmark/benchmark.h>

#include <cmath>
#include <optional>

#include "rissk/analytic.hpp"
#include "rissk/channel.hpp"
#include "rissk/montecarlo.hpp"
#include "rissk/rng.hpp"
#include "rissk/verify.hpp"

namespace {

rissk::SystemConfig bench_cfg(int n, int n_r, rissk::Scheme scheme = rissk::Scheme::ssk) {
    rissk::SystemConfig cfg;
    cfg.scheme = scheme;
    cfg.n = n;
    cfg.n_r = n_r;
    cfg.es = 0.01;
    cfg.k = 0.1;
    cfg.m_order = 8;
    return cfg;
}

void philox_u64(benchmark::State& state) {
    rissk::Philox rng(42, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(philox_u64);

void philox_normal(benchmark::State& state) {
    rissk::Philox rng(42, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(philox_normal);

void gamma_draw(benchmark::State& state) {
    rissk::Philox rng(42, 0);
    const rissk::GammaSampler sampler(state.range(0) / 10.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(gamma_draw)->Arg(5)->Arg(10)->Arg(40);

void channel_fill(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    rissk::Philox rng(42, 0);
    rissk::ChannelSampler sampler(rissk::NakagamiParams{});
    rissk::ChannelMatrix h(n, 4);
    for (auto _ : state) {
        sampler.fill(h, rng);
        benchmark::DoNotOptimize(h.at(0, 0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}
BENCHMARK(channel_fill)->Arg(16)->Arg(64)->Arg(256);

void exact_trials(benchmark::State& state) {
    const auto cfg = bench_cfg(static_cast<int>(state.range(0)), 4);
    rissk::McConfig mc;
    mc.trials = 4096;
    mc.chunk_size = 4096;
    mc.workers = 1;
    for (auto _ : state) {
        mc.seed += 1;
        benchmark::DoNotOptimize(rissk::estimate_ped_exact(cfg, mc));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(mc.trials));
}
BENCHMARK(exact_trials)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void surrogate_trials(benchmark::State& state) {
    const auto cfg = bench_cfg(64, static_cast<int>(state.range(0)));
    rissk::McConfig mc;
    mc.trials = 65536;
    mc.chunk_size = 65536;
    mc.mode = rissk::McMode::surrogate;
    mc.workers = 1;
    for (auto _ : state) {
        mc.seed += 1;
        benchmark::DoNotOptimize(rissk::estimate_ped_surrogate(cfg, mc));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(mc.trials));
}
BENCHMARK(surrogate_trials)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void analytic_ped(benchmark::State& state) {
    const auto cfg = bench_cfg(64, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rissk::ped_ssk(cfg));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(analytic_ped)->Arg(2)->Arg(8)->Arg(32);

void analytic_ped_rpm(benchmark::State& state) {
    const auto cfg = bench_cfg(64, 4, rissk::Scheme::rpm);
    for (auto _ : state) benchmark::DoNotOptimize(rissk::ped_rpm(cfg));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(analytic_ped_rpm);

void quadrature_oracle(benchmark::State& state) {
    const auto mom = rissk::ssk_moments(bench_cfg(64, 4));
    const rissk::QuadratureSpec spec{static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(rissk::mgf_by_quadrature(mom, -1.0 / mom.a, spec));
}
BENCHMARK(quadrature_oracle)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
