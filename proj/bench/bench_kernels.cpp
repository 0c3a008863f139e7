// Serial reference vs OpenMP leapfrog step on the padded 2D test-case grid.
#include <benchmark/benchmark.h>

#include <cmath>
#include <utility>
#include <vector>

#include "pat/kernels.hpp"

namespace {

using pat::kernels::Backend;

void run_step(benchmark::State& state, Backend be)
{
    const int n = static_cast<int>(state.range(0));
    const auto grid = pat::GridSpec::square(-3.3, 3.3, n);
    std::vector<double> c2(grid.size(), 1.1), prev(grid.size()), cur(grid.size()), next(grid.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] = std::sin(0.001 * static_cast<double>(i));
        prev[i] = 0.99 * cur[i];
    }
    const pat::kernels::StepCoefficients k{1.0 / 1.005, 0.995, 1e-4, 0.0};
    for (auto _ : state) {
        pat::kernels::leapfrog_step(be, grid, pat::kernels::Operator::ScaledLaplacian, c2, prev, cur, next, k);
        benchmark::DoNotOptimize(next.data());
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_StepSerial(benchmark::State& state) { run_step(state, Backend::Serial); }
void BM_StepOpenMP(benchmark::State& state) { run_step(state, Backend::OpenMP); }

void run_sweep(benchmark::State& state, Backend be)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> b0(n), prev(n, 0.5), out(n);
    for (std::size_t i = 0; i < n; ++i) b0[i] = std::cos(0.01 * static_cast<double>(i));
    const pat::kernels::PointwiseParams p{0.2, 0.005, 0.0, 2.0, 1.0};
    for (auto _ : state) {
        pat::kernels::pointwise_sweep(be, b0, prev, p, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

void BM_SweepSerial(benchmark::State& state) { run_sweep(state, Backend::Serial); }
void BM_SweepOpenMP(benchmark::State& state) { run_sweep(state, Backend::OpenMP); }

}  // namespace

BENCHMARK(BM_StepSerial)->Arg(128)->Arg(328)->Arg(1024);
BENCHMARK(BM_StepOpenMP)->Arg(128)->Arg(328)->Arg(1024);
BENCHMARK(BM_SweepSerial)->Arg(10000)->Arg(1000000);
BENCHMARK(BM_SweepOpenMP)->Arg(10000)->Arg(1000000);

BENCHMARK_MAIN();
