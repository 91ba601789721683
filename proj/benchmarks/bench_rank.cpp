#include <benchmark/benchmark.h>

#include <random>

#include "conic/incidence.hpp"

using namespace conic;

namespace {

Gf2Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed) {
    std::mt19937 rng(seed);
    Gf2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng() & 1) m.set(r, c);
    return m;
}

void BM_rank_random(benchmark::State& state) {
    const std::size_t n = state.range(0);
    Gf2Matrix m = random_matrix(n, n, 42);
    for (auto _ : state) benchmark::DoNotOptimize(rank2(m));
    state.SetComplexityN(n);
}

void BM_build_geometry(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ConicGeometry g(Field::from_order(q));
        benchmark::DoNotOptimize(g.size());
    }
}

void BM_rank_B(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    ConicGeometry g(Field::from_order(q));
    LabeledMatrix B = build_B(g);
    for (auto _ : state) benchmark::DoNotOptimize(rank2(B.mat));
}

void BM_dimension_report(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    ConicGeometry g(Field::from_order(q));
    for (auto _ : state) benchmark::DoNotOptimize(dimension_report(g));
}

} // namespace

BENCHMARK(BM_rank_random)->Arg(256)->Arg(1024)->Arg(3321)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_build_geometry)->Arg(27)->Arg(81)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_B)->Arg(27)->Arg(81)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dimension_report)->Arg(27)->Arg(81)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
