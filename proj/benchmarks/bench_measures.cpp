#include <benchmark/benchmark.h>

#include "cubesense/dtree.hpp"
#include "cubesense/families.hpp"
#include "cubesense/fourier.hpp"
#include "cubesense/restrictions.hpp"
#include "cubesense/sensitivity.hpp"
#include "cubesense/treewalk.hpp"

using namespace cubesense;

static void BM_Spectrum(benchmark::State& state) {
    const auto f = random_fn(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        auto s = spectrum(f);
        benchmark::DoNotOptimize(s.coeffs.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Spectrum)->DenseRange(8, 18, 2)->Complexity();

static void BM_MaxSensitivity(benchmark::State& state) {
    const auto f = random_fn(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(max_sensitivity(f));
}
BENCHMARK(BM_MaxSensitivity)->DenseRange(8, 16, 4);

static void BM_DecisionTreeDepth(benchmark::State& state) {
    const auto f = random_fn(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(decision_tree_depth(f));
}
BENCHMARK(BM_DecisionTreeDepth)->DenseRange(6, 12, 2);

static void BM_TreeSensitivity(benchmark::State& state) {
    const auto f = random_fn(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(tree_sensitivity(f));
}
BENCHMARK(BM_TreeSensitivity)->DenseRange(3, 5, 1);

static void BM_RestrictionScan(benchmark::State& state) {
    const auto f = random_fn(8, 1);
    for (auto _ : state) {
        auto st = restriction_stats(f, 3, 2, RestrictionEvent::kSensitivityAtLeast);
        benchmark::DoNotOptimize(&st);
    }
}
BENCHMARK(BM_RestrictionScan);

static void BM_ProperWalk3n(benchmark::State& state) {
    const auto f = parity_fn(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto w = proper_walk_3n(f);
        benchmark::DoNotOptimize(w.flips.data());
    }
}
BENCHMARK(BM_ProperWalk3n)->DenseRange(2, 6, 1);

BENCHMARK_MAIN();
