// OpenMP kernels against their serial references.
//
//   OMP_NUM_THREADS=8 ./bench_kernels

#include "segment/encoding.hpp"
#include "segment/metrics.hpp"
#include "segment/objective.hpp"
#include "segment/oracle.hpp"
#include "segment/reference.hpp"

#include <benchmark/benchmark.h>

using namespace segment;

namespace {

const RgbImage& corpus_image() {
    static const RgbImage img = read_image(SEGMENT_CORPUS_DIR "/img1.png");
    return img;
}

// Large synthetic frame so the per-pixel kernels have enough work to split.
const RgbImage& large_image() {
    static const RgbImage img = [] {
        RgbImage out(2048, 1536);
        auto data = out.data();
        std::uint32_t x = 12345;
        for (auto& v : data) {
            x = x * 1664525u + 1013904223u;
            v = static_cast<std::uint8_t>(x >> 24);
        }
        return out;
    }();
    return img;
}

ChannelThresholds sample_thresholds() {
    return {ThresholdSet({60, 120, 180}), ThresholdSet({50, 100, 200}), ThresholdSet({40, 90, 170})};
}

ClassValues sample_values() {
    return {std::vector<std::uint8_t>{30, 90, 150, 220}, std::vector<std::uint8_t>{25, 75, 150, 230},
            std::vector<std::uint8_t>{20, 65, 130, 210}};
}

void BM_HistogramSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::channel_histogram(large_image(), 1));
}
void BM_HistogramParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(channel_histogram(large_image(), 1));
}

void BM_ApplySerial(benchmark::State& state) {
    const auto t = sample_thresholds();
    const auto v = sample_values();
    for (auto _ : state) benchmark::DoNotOptimize(reference::apply_thresholds(large_image(), t, v));
}
void BM_ApplyParallel(benchmark::State& state) {
    const auto t = sample_thresholds();
    const auto v = sample_values();
    for (auto _ : state) benchmark::DoNotOptimize(apply_thresholds(large_image(), t, v));
}

void BM_MseSerial(benchmark::State& state) {
    const auto seg = apply_thresholds(large_image(), sample_thresholds(), sample_values());
    for (auto _ : state) benchmark::DoNotOptimize(reference::mse(large_image(), seg));
}
void BM_MseParallel(benchmark::State& state) {
    const auto seg = apply_thresholds(large_image(), sample_thresholds(), sample_values());
    for (auto _ : state) benchmark::DoNotOptimize(mse(large_image(), seg));
}

void BM_OracleSerial(benchmark::State& state) {
    const auto tables = build_tables(channel_histogram(corpus_image(), 0));
    const int nth = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(reference::exhaustive_best(tables, nth));
}
void BM_OracleParallel(benchmark::State& state) {
    const auto tables = build_tables(channel_histogram(corpus_image(), 0));
    const int nth = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(exhaustive_best(tables, nth));
}

void BM_FitnessPrefix(benchmark::State& state) {
    const auto tables = build_tables(channel_histogram(corpus_image(), 0));
    const ThresholdSet t({40, 80, 120, 160, 200});
    for (auto _ : state) benchmark::DoNotOptimize(mce_fitness(tables, t));
}
void BM_FitnessDirect(benchmark::State& state) {
    const auto h = channel_histogram(corpus_image(), 0);
    const ThresholdSet t({40, 80, 120, 160, 200});
    for (auto _ : state) benchmark::DoNotOptimize(mce_fitness_direct(h, t));
}

}  // namespace

BENCHMARK(BM_HistogramSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ApplySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MseSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MseParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FitnessPrefix);
BENCHMARK(BM_FitnessDirect);

BENCHMARK_MAIN();
