// Benchmarks for the enumeration and transfer-matrix kernels on the
// hard-square system, the usual stress case for these code paths.

#include "shiftlab/entropy.hpp"
#include "shiftlab/irreducibility.hpp"
#include "shiftlab/projection.hpp"

#include <benchmark/benchmark.h>

using namespace shiftlab;

namespace {

SftSpec hard_square() {
    Alphabet binary({"0", "1"});
    return SftSpec(2, binary,
                   {Pattern(PointSet(2, {{0, 0}, {1, 0}}), {1, 1}),
                    Pattern(PointSet(2, {{0, 0}, {0, 1}}), {1, 1})});
}

void BM_count_window(benchmark::State& state) {
    SftSpec sft = hard_square();
    Coord n = static_cast<Coord>(state.range(0));
    PointSet window = folner_box({n, n});
    Capacity cap;
    cap.max_cells = 256;
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_locally_admissible(sft, window, cap));
    }
}
BENCHMARK(BM_count_window)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

void BM_enumerate_language(benchmark::State& state) {
    SftSpec sft = hard_square();
    Coord n = static_cast<Coord>(state.range(0));
    PointSet window = folner_box({n, n});
    PointSet margin = centered_cube(2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_language(sft, window, margin));
    }
}
BENCHMARK(BM_enumerate_language)->Arg(3)->Arg(4);

void BM_strip_bound(benchmark::State& state) {
    SftSpec sft = hard_square();
    std::vector<int> widths{static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(strip_bounds_2d(sft, widths));
    }
}
BENCHMARK(BM_strip_bound)->Arg(4)->Arg(8)->Arg(12);

void BM_product_language(benchmark::State& state) {
    SftSpec sft = hard_square();
    SubgroupBasis row(2, {{1, 0}});
    Coord n = static_cast<Coord>(state.range(0));
    PointSet window = folner_box({n, n});
    PointSet margin = centered_cube(2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_language(sft, row, window, margin));
    }
}
BENCHMARK(BM_product_language)->Arg(3)->Arg(4);

void BM_glue_check(benchmark::State& state) {
    SftSpec sft = hard_square();
    MixingShape d(centered_cube(2, 1));
    PointSet margin = centered_cube(2, 1);
    int scale = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_strong_irreducibility(sft, d, scale, margin));
    }
}
BENCHMARK(BM_glue_check)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
