#include <benchmark/benchmark.h>

#include "rbinom/dominance.hpp"
#include "rbinom/estimators.hpp"
#include "rbinom/incbeta.hpp"
#include "rbinom/risk.hpp"

using namespace rbinom;

static void BM_EvalI(benchmark::State& state) {
    double p = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_I(2.5, 7.0, p));
        p = p < 0.9 ? p + 1e-6 : 0.3;
    }
}
BENCHMARK(BM_EvalI);

static void BM_EstimateTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(make_estimate_table(n, PriorSpec{1.0, 1.0, Restriction::upper(0.3)}));
}
BENCHMARK(BM_EstimateTable)->Arg(10)->Arg(100)->Arg(1000);

static void BM_PointRisk(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto table = make_estimate_table(n, PriorSpec{1.0, 1.0, Restriction::upper(0.3)});
    for (auto _ : state) benchmark::DoNotOptimize(point_risk(table, 0.2));
}
BENCHMARK(BM_PointRisk)->Arg(10)->Arg(100)->Arg(1000);

static void BM_ThresholdN1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dominance_threshold_n1(1.0));
}
BENCHMARK(BM_ThresholdN1);
BENCHMARK_MAIN();
