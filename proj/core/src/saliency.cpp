#include "dof/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dof/errors.hpp"
#include "dof/histogram.hpp"
#include "mirror.hpp"

namespace dof {

namespace {

constexpr int kPyramidLevels = 5;   // levels 0..4
constexpr int kMinDimension = 16;   // level 4 still has >= 1 pixel

struct Grid {
    int w = 0;
    int h = 0;
    std::vector<double> v;

    double at(int x, int y) const { return v[static_cast<std::size_t>(y) * w + x]; }
    double& at(int x, int y) { return v[static_cast<std::size_t>(y) * w + x]; }
};

Grid from_gray(const Raster& r) {
    Grid g{r.width, r.height, {}};
    g.v.assign(r.data.begin(), r.data.end());
    return g;
}

// Separable 5-tap binomial smoothing (1 4 6 4 1)/16, mirrored boundaries.
Grid binomial_smooth(const Grid& g) {
    static constexpr double taps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    Grid tmp{g.w, g.h, std::vector<double>(g.v.size())};
    for (int y = 0; y < g.h; ++y)
        for (int x = 0; x < g.w; ++x) {
            double acc = 0.0;
            for (int j = -2; j <= 2; ++j)
                acc += taps[j + 2] * g.at(detail::mirror_index(x + j, g.w), y);
            tmp.at(x, y) = acc;
        }
    Grid out{g.w, g.h, std::vector<double>(g.v.size())};
    for (int y = 0; y < g.h; ++y)
        for (int x = 0; x < g.w; ++x) {
            double acc = 0.0;
            for (int j = -2; j <= 2; ++j)
                acc += taps[j + 2] * tmp.at(x, detail::mirror_index(y + j, g.h));
            out.at(x, y) = acc;
        }
    return out;
}

// Keep even rows/columns; dims round up so no level collapses to zero.
Grid decimate2(const Grid& g) {
    Grid out{(g.w + 1) / 2, (g.h + 1) / 2, {}};
    out.v.resize(static_cast<std::size_t>(out.w) * out.h);
    for (int y = 0; y < out.h; ++y)
        for (int x = 0; x < out.w; ++x) out.at(x, y) = g.at(2 * x, 2 * y);
    return out;
}

// Nearest-neighbor upsampling across `octaves` factor-2 steps: the source
// pixel for (x, y) is (x >> octaves, y >> octaves), which always lands in
// range for the round-up pyramid dimensions.
Grid upsample_nn(const Grid& src, int octaves, int tw, int th) {
    Grid out{tw, th, std::vector<double>(static_cast<std::size_t>(tw) * th)};
    for (int y = 0; y < th; ++y) {
        const int sy = std::min(y >> octaves, src.h - 1);
        for (int x = 0; x < tw; ++x)
            out.at(x, y) = src.at(std::min(x >> octaves, src.w - 1), sy);
    }
    return out;
}

void accumulate_abs_diff(Grid& acc, const Grid& center, const Grid& surround_up) {
    for (std::size_t i = 0; i < acc.v.size(); ++i)
        acc.v[i] += std::abs(center.v[i] - surround_up.v[i]);
}

}  // namespace

SaliencyMap compute_saliency(const Raster& gray) {
    if (gray.channels != 1)
        throw std::invalid_argument("compute_saliency: expects a single-channel raster");
    if (gray.width < kMinDimension || gray.height < kMinDimension)
        throw pipeline_error("image too small for the saliency pyramid (minimum 16x16)");

    Grid pyr[kPyramidLevels];
    pyr[0] = from_gray(gray);
    for (int k = 1; k < kPyramidLevels; ++k) pyr[k] = decimate2(binomial_smooth(pyr[k - 1]));

    // Center-surround contrast: centers at levels {0, 1}, surrounds two and
    // three octaves coarser.
    Grid total{gray.width, gray.height,
               std::vector<double>(static_cast<std::size_t>(gray.width) * gray.height, 0.0)};
    for (int c = 0; c <= 1; ++c) {
        Grid acc{pyr[c].w, pyr[c].h, std::vector<double>(pyr[c].v.size(), 0.0)};
        for (int s = c + 2; s <= c + 3; ++s)
            accumulate_abs_diff(acc, pyr[c], upsample_nn(pyr[s], s - c, pyr[c].w, pyr[c].h));
        const Grid full = c == 0 ? std::move(acc) : upsample_nn(acc, c, gray.width, gray.height);
        for (std::size_t i = 0; i < total.v.size(); ++i) total.v[i] += full.v[i];
    }

    const auto [lo_it, hi_it] = std::minmax_element(total.v.begin(), total.v.end());
    const double lo = *lo_it, hi = *hi_it;

    SaliencyMap out{gray.width, gray.height, std::vector<float>(total.v.size(), 0.0f)};
    if (hi > lo) {
        const double range = hi - lo;
        for (std::size_t i = 0; i < total.v.size(); ++i)
            out.values[i] = static_cast<float>((total.v[i] - lo) / range);
    }
    return out;
}

SaliencyMap saliency_from_raster(const Raster& r) {
    if (r.channels != 1)
        throw input_error("external saliency map must be a single-channel (P5) raster");
    SaliencyMap out{r.width, r.height, {}};
    out.values.resize(r.data.size());
    for (std::size_t i = 0; i < r.data.size(); ++i)
        out.values[i] = static_cast<float>(r.data[i]) / 255.0f;
    return out;
}

SalientMask threshold_saliency(const SaliencyMap& s, const SaliencyPolicy& policy) {
    SalientMask mask{s.width, s.height, std::vector<std::uint8_t>(s.values.size(), 0)};
    if (s.values.empty()) return mask;

    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    if (*lo == *hi) {
        // flat map: everything salient, which downstream keeps the whole
        // frame in focus
        std::fill(mask.flags.begin(), mask.flags.end(), std::uint8_t{1});
        return mask;
    }

    if (policy.kind == SaliencyPolicy::Kind::kFixed) {
        for (std::size_t i = 0; i < s.values.size(); ++i)
            mask.flags[i] = s.values[i] > policy.value ? 1 : 0;
        return mask;
    }

    std::vector<std::uint8_t> bins(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        long b = std::lround(static_cast<double>(s.values[i]) * 255.0);
        bins[i] = static_cast<std::uint8_t>(b < 0 ? 0 : b > 255 ? 255 : b);
    }
    const int k = otsu_threshold(build_histogram(bins));
    for (std::size_t i = 0; i < bins.size(); ++i) mask.flags[i] = bins[i] > k ? 1 : 0;
    return mask;
}

}  // namespace dof
