#include <benchmark/benchmark.h>

#include <mubtomo/estimate.hpp>
#include <mubtomo/metrics.hpp>

using namespace mubtomo;

namespace {

DensityMatrix random_state(std::uint64_t salt) {
    RngStream rng(1234, salt);
    return haar_random_max_entangled(rng);
}

void BM_EigHermitian(benchmark::State& state) {
    const auto rho = random_state(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_hermitian(rho.matrix()));
    }
}
BENCHMARK(BM_EigHermitian);

void BM_Fidelity(benchmark::State& state) {
    const auto a = random_state(1);
    const auto b = random_state(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity(a, b));
    }
}
BENCHMARK(BM_Fidelity);

void BM_SampleCounts(benchmark::State& state) {
    const auto scheme = state.range(0) == 0 ? ssqst_scheme() : mub_scheme(0.93);
    const auto rho = random_state(3);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        RngStream rng(99, stream++);
        benchmark::DoNotOptimize(
            sample_counts(rho, scheme, 18000, CountModel::MultinomialExact, rng));
    }
}
BENCHMARK(BM_SampleCounts)->Arg(0)->Arg(1);

void BM_MleReconstruct(benchmark::State& state) {
    const auto scheme = state.range(0) == 0 ? ssqst_scheme() : mub_scheme(0.93);
    const auto rho = random_state(4);
    RngStream rng(7, 0);
    const auto counts = sample_counts(rho, scheme, 18000, CountModel::MultinomialExact, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mle_reconstruct(counts, scheme));
    }
}
BENCHMARK(BM_MleReconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LinearInversion(benchmark::State& state) {
    const auto scheme = ssqst_scheme();
    const auto rho = random_state(5);
    RngStream rng(8, 0);
    const auto counts = sample_counts(rho, scheme, 18000, CountModel::MultinomialExact, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(linear_inversion(counts, scheme));
    }
}
BENCHMARK(BM_LinearInversion);

void BM_PredictMixedRatio(benchmark::State& state) {
    const auto ssqst = ssqst_scheme();
    const auto mub = mub_scheme(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_mixed_ratio(ssqst, mub, 18000.0));
    }
}
BENCHMARK(BM_PredictMixedRatio);

}  // namespace

BENCHMARK_MAIN();
