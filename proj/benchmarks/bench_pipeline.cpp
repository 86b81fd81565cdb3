#include <benchmark/benchmark.h>

#include "diagform/center.hpp"
#include "diagform/decomp.hpp"
#include "diagform/harness.hpp"

using namespace diagform;

namespace {

void BM_Congruence(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<unsigned>(state.range(1));
    const SymTensor a = gram_tensor(random_dense_form(n, d, 1));
    Rng rng(2);
    const Matrix p = random_full_rank(n, n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(congruence(a, p));
    }
}
BENCHMARK(BM_Congruence)->Args({3, 3})->Args({4, 4})->Args({5, 4})->Args({6, 3})->Unit(benchmark::kMillisecond);

void BM_Center(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<unsigned>(state.range(1));
    const SymTensor a = gram_tensor(random_diagonalizable(n, d, 3).form);
    for (auto _ : state) {
        benchmark::DoNotOptimize(center_basis(a));
    }
}
BENCHMARK(BM_Center)->Args({3, 3})->Args({4, 4})->Args({5, 3})->Args({6, 3})->Unit(benchmark::kMillisecond);

void BM_DecomposeDiagonalizable(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<unsigned>(state.range(1));
    const Form f = random_diagonalizable(n, d, 4).form;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(f, FieldConfig::rationals()));
    }
}
BENCHMARK(BM_DecomposeDiagonalizable)->Args({2, 4})->Args({3, 3})->Args({4, 4})->Args({5, 3})->Unit(benchmark::kMillisecond);

void BM_DecomposeGeneric(benchmark::State& state)
{
    const Form f = random_dense_form(static_cast<std::size_t>(state.range(0)), 3, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(f, FieldConfig::rationals()));
    }
}
BENCHMARK(BM_DecomposeGeneric)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
