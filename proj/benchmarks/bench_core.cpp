#include <benchmark/benchmark.h>

#include "anosov/affine_flow.hpp"
#include "anosov/birkhoff.hpp"
#include "anosov/hyperbolicity.hpp"
#include "anosov/sections.hpp"

using namespace anosov;

namespace {

ModelParams cat_params() {
    ModelParams p;
    p.lambda = 0.381966011250105;
    p.r1 = 0.025;
    p.r2 = 0.00625;
    return p;
}

void BM_PhiMatrixFull(benchmark::State& state) {
    const auto p = cat_params();
    double r = 0.0;
    for (auto _ : state) {
        r += p.r2 / 997.0;
        if (r > p.r2) r = 0.0;
        benchmark::DoNotOptimize(phi_matrix_full(p, r));
    }
}
BENCHMARK(BM_PhiMatrixFull);

void BM_TransitMap(benchmark::State& state) {
    const auto p = cat_params();
    for (auto _ : state) benchmark::DoNotOptimize(transit_map(p, {p.r1, 0.5 * p.r2, 0.25}));
}
BENCHMARK(BM_TransitMap);

void BM_WeakWordMap(benchmark::State& state) {
    const auto p = cat_params();
    const auto words = sample_itineraries(p, 256, static_cast<std::size_t>(state.range(0)), 6.0, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(weak_word_map(p, ConeFlavor::cu, words[i++ % words.size()]));
    }
}
BENCHMARK(BM_WeakWordMap)->Arg(9)->Arg(39);

void BM_EstimateConstants(benchmark::State& state) {
    const auto p = cat_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_constants(p, static_cast<int>(state.range(0)), 5.76));
    }
}
BENCHMARK(BM_EstimateConstants)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_WeakSuite(benchmark::State& state) {
    const auto p = cat_params();
    const auto c = estimate_constants(p, 400, 5.76);
    SuiteOptions opt;
    opt.words = static_cast<std::size_t>(state.range(0));
    const auto words = suite_words(p, c, opt);
    for (auto _ : state) benchmark::DoNotOptimize(run_weak_suite(p, c, words));
}
BENCHMARK(BM_WeakSuite)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Transversality(benchmark::State& state) {
    const auto section = build_helicoid(cat_params());
    for (auto _ : state) {
        benchmark::DoNotOptimize(transversality_check(section, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_Transversality)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_CombinatoricsTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(combinatorics_table(50, 50));
}
BENCHMARK(BM_CombinatoricsTable)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
