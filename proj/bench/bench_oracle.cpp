// Serial vs OpenMP exhaustive oracle.

#include <benchmark/benchmark.h>

#include "fsp/instance.hpp"
#include "fsp/oracle.hpp"

namespace {

fsp::Subscription instance(int features, int precs) {
    auto cat = fsp::gen_catalogue({14, 40, {fsp::PairType::Before, fsp::PairType::After}}, 77);
    return fsp::gen_subscription(cat, {features, precs, 4}, 78);
}

void BM_OracleSerial(benchmark::State& state) {
    auto sub = instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(fsp::brute_force_optimal_serial(sub));
}

void BM_OracleParallel(benchmark::State& state) {
    auto sub = instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(fsp::brute_force_optimal(sub));
}

}  // namespace

BENCHMARK(BM_OracleSerial)->Args({8, 6})->Args({10, 8})->Args({12, 10})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Args({8, 6})->Args({10, 8})->Args({12, 10})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
