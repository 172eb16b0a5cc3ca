#include <benchmark/benchmark.h>

#include "medianlab/catalog.hpp"
#include "medianlab/congruence.hpp"
#include "medianlab/median.hpp"

using namespace medianlab;

static void BM_ValidateGrid(benchmark::State& state) {
    const int k = int(state.range(0));
    FiniteLattice grid = build_grid(k, k);
    std::vector<std::string> names = grid.names();
    std::vector<std::pair<int, int>> covers(grid.covers());
    for (auto _ : state)
        benchmark::DoNotOptimize(FiniteLattice::from_covers(names, covers, true));
}
BENCHMARK(BM_ValidateGrid)->Arg(6)->Arg(10)->Arg(16);

static void BM_TPoset(benchmark::State& state) {
    FiniteLattice e = build_E(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(t_poset(e));
}
BENCHMARK(BM_TPoset)->Arg(4)->Arg(8);

static void BM_EnumerateMedians(benchmark::State& state) {
    FiniteLattice l = state.range(0) == 0 ? build_named("A1") : build_named("M4");
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_outer_medians(l, 2000));
}
BENCHMARK(BM_EnumerateMedians)->Arg(0)->Arg(1);

static void BM_TernaryClone(benchmark::State& state) {
    FiniteLattice l = state.range(0) == 0 ? build_named("M3") : build_named("N5");
    for (auto _ : state) benchmark::DoNotOptimize(ternary_clone(l));
}
BENCHMARK(BM_TernaryClone)->Arg(0)->Arg(1);

static void BM_ThetaD(benchmark::State& state) {
    FiniteLattice l = build_grid(int(state.range(0)), int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(theta_d(l));
}
BENCHMARK(BM_ThetaD)->Arg(3)->Arg(5);

static void BM_Isomorphism(benchmark::State& state) {
    FiniteLattice a = build_grid(3, int(state.range(0)));
    FiniteLattice b = dual(a);
    for (auto _ : state) benchmark::DoNotOptimize(is_isomorphic(a, b));
}
BENCHMARK(BM_Isomorphism)->Arg(3)->Arg(5);

static void BM_EnumerateLattices(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_lattices(int(state.range(0))));
}
BENCHMARK(BM_EnumerateLattices)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
