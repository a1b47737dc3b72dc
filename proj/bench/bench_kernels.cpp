// Parallel kernels against their serial references. The thread count of
// the parallel runs is the benchmark argument.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "skewlab/family.hpp"
#include "skewlab/invariant.hpp"
#include "skewlab/julia.hpp"

using namespace skewlab;

namespace {

const Poly& basilica4() {
    static const Poly p = biquad_poly(BiquadParams(-1, 0));
    return p;
}

const ExampleInstance& example() {
    static const ExampleInstance ex = construct_example(8);
    return ex;
}

std::vector<Complex> cloud(std::size_t n, double phase) {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::polar(1.0 + 0.1 * std::sin(3.0 * i), phase + 0.013 * i));
    return out;
}

void BM_base_grid(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    GridSpec g(0.0, 2.0, 256, 256);
    for (auto _ : st) benchmark::DoNotOptimize(filled_julia_base(basilica4(), g, 500));
}

void BM_base_grid_reference(benchmark::State& st) {
    GridSpec g(0.0, 2.0, 256, 256);
    for (auto _ : st) benchmark::DoNotOptimize(filled_julia_base_reference(basilica4(), g, 500));
}

void BM_fiber_grid(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    const auto& ex = example();
    auto orbit = ex.walk.orbit(ex.f.base(), 5, 200);
    GridSpec g(0.0, 2.5, 192, 192);
    for (auto _ : st) benchmark::DoNotOptimize(fiber_filled_julia(ex.f, orbit, g, 200));
}

void BM_fiber_grid_reference(benchmark::State& st) {
    const auto& ex = example();
    auto orbit = ex.walk.orbit(ex.f.base(), 5, 200);
    GridSpec g(0.0, 2.5, 192, 192);
    for (auto _ : st) benchmark::DoNotOptimize(fiber_filled_julia_reference(ex.f, orbit, g, 200));
}

void BM_classify_grid(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    auto g = GridSpec::box(-3, 1, -3, 1, 48, 48);
    for (auto _ : st) benchmark::DoNotOptimize(classify_grid(g, 500));
}

void BM_classify_grid_reference(benchmark::State& st) {
    auto g = GridSpec::box(-3, 1, -3, 1, 48, 48);
    for (auto _ : st) benchmark::DoNotOptimize(classify_grid_reference(g, 500));
}

void BM_hausdorff(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    auto a = cloud(4000, 0.0), b = cloud(4000, 0.005);
    for (auto _ : st) benchmark::DoNotOptimize(hausdorff(a, b));
}

void BM_hausdorff_reference(benchmark::State& st) {
    auto a = cloud(4000, 0.0), b = cloud(4000, 0.005);
    for (auto _ : st) benchmark::DoNotOptimize(hausdorff_reference(a, b));
}

struct CriticalSetup {
    SaddleSetEstimate saddles;
    std::vector<CriticalSample> samples;
};

const CriticalSetup& critical_setup() {
    static const CriticalSetup s = [] {
        const auto& ex = example();
        return CriticalSetup{find_saddles(ex.f, 1), critical_samples(ex.f, ex.walk)};
    }();
    return s;
}

void BM_classify_critical(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    const auto& ex = example();
    const auto& s = critical_setup();
    for (auto _ : st) benchmark::DoNotOptimize(classify_critical(ex.f, s.saddles, ex.walk, s.samples));
}

void BM_classify_critical_reference(benchmark::State& st) {
    const auto& ex = example();
    const auto& s = critical_setup();
    for (auto _ : st) benchmark::DoNotOptimize(classify_critical_reference(ex.f, s.saddles, ex.walk, s.samples));
}

void thread_args(benchmark::internal::Benchmark* b) {
    const int hw = omp_get_num_procs();
    for (int t = 1; t <= hw; t *= 2) b->Arg(t);
    if ((hw & (hw - 1)) != 0) b->Arg(hw);
}

}  // namespace

BENCHMARK(BM_base_grid)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_base_grid_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fiber_grid)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fiber_grid_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_classify_grid)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_classify_grid_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hausdorff)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hausdorff_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_classify_critical)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_classify_critical_reference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
