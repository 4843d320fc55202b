#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cpjoint/cov_change.hpp"
#include "cpjoint/dataset.hpp"
#include "cpjoint/inference.hpp"
#include "cpjoint/mean_change.hpp"
#include "cpjoint/scale.hpp"
#include "cpjoint/simulation.hpp"

namespace {

cpjoint::Dataset random_data(std::size_t n, std::size_t p) {
    std::mt19937_64 rng(n * 131 + p);
    std::normal_distribution<double> z;
    std::vector<double> v(n * p);
    for (double& x : v) x = z(rng);
    return {n, p, std::move(v)};
}

void BM_Gram(benchmark::State& state) {
    const auto d = random_data(static_cast<std::size_t>(state.range(0)), 100);
    for (auto _ : state) benchmark::DoNotOptimize(cpjoint::gram(d));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gram)->RangeMultiplier(2)->Range(100, 1600)->Complexity(benchmark::oNSquared);

void BM_CovCurve(benchmark::State& state) {
    const auto d = random_data(static_cast<std::size_t>(state.range(0)), 100);
    const auto g = cpjoint::gram(d);
    for (auto _ : state) benchmark::DoNotOptimize(cpjoint::cov_stat_curve(d, g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CovCurve)->RangeMultiplier(2)->Range(100, 1600)->Complexity(benchmark::oNSquared);

void BM_MeanCurve(benchmark::State& state) {
    const auto d = random_data(static_cast<std::size_t>(state.range(0)), 50);
    for (auto _ : state) benchmark::DoNotOptimize(cpjoint::mean_stat_curve(d));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanCurve)->RangeMultiplier(10)->Range(1000, 100000)->Complexity(benchmark::oN);

void BM_Trace(benchmark::State& state) {
    const auto d = random_data(static_cast<std::size_t>(state.range(0)), 50);
    for (auto _ : state) benchmark::DoNotOptimize(cpjoint::trace_sigma2_hat(d));
}
BENCHMARK(BM_Trace)->Arg(2000)->Arg(20000);

void BM_Analyze(benchmark::State& state) {
    const auto d = random_data(static_cast<std::size_t>(state.range(0)), 100);
    for (auto _ : state) benchmark::DoNotOptimize(cpjoint::analyze(d));
}
BENCHMARK(BM_Analyze)->Arg(200)->Arg(800);

void BM_Generate(benchmark::State& state) {
    cpjoint::SimulationModel m;
    m.tau_star = 100;
    m.delta2 = 2.0;
    const cpjoint::DataGenerator gen(m);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(gen.generate(seed++));
}
BENCHMARK(BM_Generate);

}  // namespace
BENCHMARK_MAIN();
