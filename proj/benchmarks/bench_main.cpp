#include "discjam/construction.hpp"
#include "discjam/metropolis.hpp"
#include "discjam/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace discjam;

static void BM_TuneEpsilon(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    const CurveFamily fam = CurveFamily::exponential(0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(tune_epsilon(fam, N, 8.0).epsilon);
}
BENCHMARK(BM_TuneEpsilon)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_AssembleSquare(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_square(N, Layout::wall_bridges).second.n_times_r);
}
BENCHMARK(BM_AssembleSquare)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_VerifyStable(benchmark::State& state)
{
    const Configuration cfg = assemble_square(static_cast<int>(state.range(0)), Layout::wall_bridges).first;
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_stable(cfg).movable_count);
    state.counters["discs"] = static_cast<double>(cfg.size());
}
BENCHMARK(BM_VerifyStable)->Arg(4)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_RunChain(benchmark::State& state)
{
    const Configuration cfg = assemble_square(static_cast<int>(state.range(0)), Layout::wall_bridges).first;
    ChainParams p = default_chain_params(cfg);
    p.steps = 100000;
    p.record_interval = 100000;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_chain(cfg, p).stats.accepted);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.steps));
}
BENCHMARK(BM_RunChain)->Arg(4)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
