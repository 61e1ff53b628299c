#include <benchmark/benchmark.h>

#include "qprob/continuum.hpp"
#include "qprob/evolution.hpp"
#include "qprob/fock.hpp"
#include "qprob/momentum.hpp"
#include "qprob/presets.hpp"
#include "qprob/rng.hpp"

using namespace qprob;

namespace {

void BM_ConditionalExpectation1D(benchmark::State& state) {
    const auto s = sample_gaussian_1d({0.0, 1.0, 0.0}, 8.0, std::size_t(state.range(0)));
    const Event a = Event::interval(-0.5, 1.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(conditional_expectation_1d(s, a));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConditionalExpectation1D)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_Independence2D(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const auto s = sample_bivariate_normal({1.0, 1.0, 0.5}, 8.0, n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(independence_check(s, 1e-8));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Independence2D)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_BuildPropagator(benchmark::State& state) {
    const auto dim = std::size_t(state.range(0));
    SplitMix64 rng(7);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    const HamiltonianMatrix h(0.5 * (a + a.adjoint()).eval());
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_propagator(h, 1.0));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildPropagator)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_GrandPartitionEnumerated(benchmark::State& state) {
    const auto modes = std::size_t(state.range(0));
    const auto e = FockEnsemble::bosons(std::vector<double>(modes, 1.0), 1.0, 0.0, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grand_partition_enumerated(e));
    }
}
BENCHMARK(BM_GrandPartitionEnumerated)->DenseRange(2, 6);

void BM_QuasiConditionalMomentum(benchmark::State& state) {
    const auto s = sample_gaussian_1d({0.0, 1.0, 1.0}, 8.0, std::size_t(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(quasi_cp_momentum_given_position(s, 0.5));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QuasiConditionalMomentum)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

void BM_DivergenceReport(benchmark::State& state) {
    const auto psi = [](double x) { return gaussian_wavefunction({0.0, 1.0, 0.0}, x); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ce_momentum_given_position(psi, 8.0, 257, 1.0, std::size_t(state.range(0))));
    }
}
BENCHMARK(BM_DivergenceReport)->DenseRange(2, 5);

}  // namespace

BENCHMARK_MAIN();
