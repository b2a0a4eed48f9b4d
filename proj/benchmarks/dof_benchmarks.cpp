// Micro-benchmarks for the hot paths, all at a 640x360 working size.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "dof/defocus.hpp"
#include "dof/depth_roi.hpp"
#include "dof/pipeline.hpp"
#include "dof/render.hpp"
#include "dof/saliency.hpp"

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 360;

dof::Raster noise(int w, int h, int channels, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    dof::Raster r = dof::Raster::make(w, h, channels);
    for (auto& v : r.data) v = static_cast<std::uint8_t>(dist(rng));
    return r;
}

// band of near-focus depths flanked by three textured background regions,
// with a saliency map that cleanly selects the band
struct Scene {
    dof::DepthMap depth{kWidth, kHeight,
                        std::vector<std::uint8_t>(std::size_t{kWidth} * kHeight)};
    dof::SaliencyMap sal{kWidth, kHeight,
                         std::vector<float>(std::size_t{kWidth} * kHeight)};

    Scene() {
        std::mt19937 rng(97);
        std::uniform_real_distribution<float> u(0.0f, 1.0f);
        for (int y = 0; y < kHeight; ++y) {
            for (int x = 0; x < kWidth; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * kWidth + x;
                if (x >= 160 && x < 320) {
                    depth.levels[i] = static_cast<std::uint8_t>(95 + (x - 160) % 11);
                    sal.values[i] = 0.6f + 0.4f * u(rng);
                } else {
                    if (x < 160)
                        depth.levels[i] = static_cast<std::uint8_t>(30 + (x * 7 + y * 3) % 60);
                    else if (x < 480)
                        depth.levels[i] = static_cast<std::uint8_t>(140 + (x + y) % 50);
                    else
                        depth.levels[i] = static_cast<std::uint8_t>(200 + (x * 3 + y * 5) % 56);
                    sal.values[i] = 0.4f * u(rng);
                }
            }
        }
    }
};

const Scene& scene() {
    static const Scene s;
    return s;
}

void BM_ComputeSaliency(benchmark::State& state) {
    const dof::Raster gray = noise(kWidth, kHeight, 1, 11);
    for (auto _ : state) benchmark::DoNotOptimize(dof::compute_saliency(gray));
}
BENCHMARK(BM_ComputeSaliency)->Unit(benchmark::kMillisecond);

void BM_RoiAndDefocusStages(benchmark::State& state) {
    const Scene& s = scene();
    for (auto _ : state) {
        const auto mask = dof::threshold_saliency(s.sal, dof::SaliencyPolicy::otsu());
        const auto sd = dof::collect_salient_depths(s.depth, mask);
        const auto t_p = dof::proximity_threshold(dof::forward_differences(sd));
        const auto roi = dof::select_depth_range(sd, t_p);
        const auto dm = dof::build_defocus_map(s.depth, roi);
        const auto bh = dof::build_blur_histogram(dm);
        const double alpha = dof::compute_alpha(bh);
        benchmark::DoNotOptimize(dof::build_sigma_table(bh, {0.2, 5.0, alpha}));
    }
}
BENCHMARK(BM_RoiAndDefocusStages)->Unit(benchmark::kMillisecond);

void BM_BlurUniform(benchmark::State& state) {
    const dof::Raster img = noise(kWidth, kHeight, 3, 13);
    const double sigma = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(dof::blur_uniform(img, sigma));
}
BENCHMARK(BM_BlurUniform)->Arg(8)->Arg(20)->Arg(78)->Unit(benchmark::kMillisecond);

void BM_Composite(benchmark::State& state) {
    const dof::Raster img = noise(kWidth, kHeight, 3, 17);
    // four depth planes: one in focus, three blur layers
    dof::DepthMap depth{kWidth, kHeight,
                        std::vector<std::uint8_t>(std::size_t{kWidth} * kHeight)};
    for (int y = 0; y < kHeight; ++y)
        for (int x = 0; x < kWidth; ++x) {
            static constexpr std::uint8_t planes[4] = {100, 130, 170, 220};
            depth.levels[static_cast<std::size_t>(y) * kWidth + x] = planes[x / 160];
        }
    const auto dm = dof::build_defocus_map(depth, dof::DepthOfInterest{100, 100, {}});
    const auto bh = dof::build_blur_histogram(dm);
    const double alpha = dof::compute_alpha(bh);
    const auto st = dof::build_sigma_table(bh, {0.2, 5.0, alpha});
    const unsigned threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(dof::composite_defocus(img, dm, st, threads));
}
BENCHMARK(BM_Composite)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
