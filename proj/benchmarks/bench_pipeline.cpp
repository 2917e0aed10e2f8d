#include "aqrm/dme.hpp"
#include "aqrm/spectrum.hpp"
#include "aqrm/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

const aqrm::ModelParams kPoint{1.0, 1.0, 1.1, 0.5};

void BM_Diagonalize(benchmark::State& state) {
    const aqrm::Truncation trunc(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(aqrm::diagonalize(kPoint, trunc, 20));
}
BENCHMARK(BM_Diagonalize)->Arg(80)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ConvergeTruncation(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(aqrm::converge_truncation(kPoint, aqrm::SolverSettings{}));
}
BENCHMARK(BM_ConvergeTruncation)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
    const aqrm::EigenSystem eig = aqrm::converge_truncation(kPoint, aqrm::SolverSettings{});
    const aqrm::BathParams bath;
    const aqrm::Generator w = aqrm::build_generator(aqrm::transition_rates(eig, bath), bath);
    for (auto _ : state) benchmark::DoNotOptimize(aqrm::steady_state(w));
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMicrosecond);

void BM_EvaluatePoint(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(aqrm::evaluate_point(kPoint, aqrm::BathParams{}, aqrm::SolverSettings{}));
}
BENCHMARK(BM_EvaluatePoint)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
