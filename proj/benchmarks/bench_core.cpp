#include "moela/dominance.hpp"
#include "moela/feature_pipeline.hpp"
#include "moela/graph.hpp"
#include "moela/indicators.hpp"
#include "moela/sampling.hpp"
#include "moela/solvers.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

moela::Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    moela::Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = u(gen);
        }
    }
    return m;
}

// Points on the simplex are mutually non-dominated, the worst case for HV.
moela::Matrix front(Eigen::Index n, Eigen::Index m, std::uint64_t seed)
{
    moela::Matrix y = random_matrix(n, m, seed);
    for (Eigen::Index i = 0; i < n; ++i) {
        y.row(i) /= y.row(i).sum();
    }
    return y;
}

void BM_NonDominatedSort(benchmark::State& state)
{
    auto y = random_matrix(state.range(0), state.range(1), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moela::non_dominated_sort(y));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NonDominatedSort)->ArgsProduct({{100, 500, 1000}, {2, 3}})->Complexity();

void BM_Hypervolume(benchmark::State& state)
{
    auto m = state.range(1);
    auto y = front(state.range(0), m, 2);
    auto ref = moela::RefPoint::uniform(static_cast<std::size_t>(m), 1.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moela::hv(y, ref));
    }
}
BENCHMARK(BM_Hypervolume)->ArgsProduct({{50, 200, 1000}, {2, 3}});

void BM_Mst(benchmark::State& state)
{
    auto x = random_matrix(state.range(0), 5, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moela::build_mst(x));
    }
}
BENCHMARK(BM_Mst)->Arg(50)->Arg(200)->Arg(500);

void BM_AllFeatures(benchmark::State& state)
{
    auto sample = moela::draw_sample(moela::make_dtlz(2, 5, 2), static_cast<int>(state.range(0)), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moela::compute_all_features(sample));
    }
}
BENCHMARK(BM_AllFeatures)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Solver(benchmark::State& state)
{
    moela::Problem problem(moela::make_zdt(1, 5));
    auto solver = moela::all_solvers[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state) {
        benchmark::DoNotOptimize(moela::run_solver(solver, problem, 2000, 0));
    }
    state.SetLabel(moela::to_string(solver));
}
BENCHMARK(BM_Solver)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}

BENCHMARK_MAIN();
