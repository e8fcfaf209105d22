#include <benchmark/benchmark.h>

#include <random>

#include "roicomp/canny.hpp"
#include "roicomp/dct.hpp"
#include "roicomp/gaussian.hpp"
#include "roicomp/jpegls.hpp"
#include "roicomp/pipeline.hpp"
#include "roicomp/synthetic.hpp"

using namespace roicomp;

namespace {

const SyntheticSample& sample512() {
    static const SyntheticSample s = generate_synthetic_angiogram(0, 512, 512);
    return s;
}

void BM_JpeglsEncode512(benchmark::State& state) {
    const GrayImage& img = sample512().image;
    for (auto _ : state) {
        auto stream = jpegls_encode(img);
        benchmark::DoNotOptimize(stream);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(img.pixel_count()));
}
BENCHMARK(BM_JpeglsEncode512)->Unit(benchmark::kMillisecond);

void BM_JpeglsDecode512(benchmark::State& state) {
    const auto stream = jpegls_encode(sample512().image);
    for (auto _ : state) {
        auto img = jpegls_decode(stream);
        benchmark::DoNotOptimize(img);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(sample512().image.pixel_count()));
}
BENCHMARK(BM_JpeglsDecode512)->Unit(benchmark::kMillisecond);

void BM_Canny512(benchmark::State& state) {
    const GrayImage& img = sample512().image;
    for (auto _ : state) {
        auto edges = canny(img, 0.15, 0.06);
        benchmark::DoNotOptimize(edges);
    }
}
BENCHMARK(BM_Canny512)->Unit(benchmark::kMillisecond);

void BM_Smooth512(benchmark::State& state) {
    const GrayImage& img = sample512().image;
    for (auto _ : state) {
        auto out = smooth(img, 1.0);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_Smooth512)->Unit(benchmark::kMillisecond);

void BM_ReduceBlock8(benchmark::State& state) {
    std::mt19937 rng(1);
    PixelBlock b{8, {}};
    for (auto& s : b.samples) s = static_cast<std::uint8_t>(rng());
    for (auto _ : state) {
        auto out = reduce_block(b, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_ReduceBlock8)->Arg(8)->Arg(24)->Arg(48);

void BM_CompressPipeline512(benchmark::State& state) {
    const SyntheticSample& s = sample512();
    for (auto _ : state) {
        auto r = compress(s.image, s.prob, {});
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_CompressPipeline512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
