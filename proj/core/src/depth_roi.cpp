#include "dof/depth_roi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "dof/errors.hpp"
#include "dof/histogram.hpp"

namespace dof {

SalientDepths collect_salient_depths(const DepthMap& d, const SalientMask& m) {
    if (d.width != m.width || d.height != m.height)
        throw std::invalid_argument("collect_salient_depths: dimension mismatch");

    std::array<std::uint64_t, 256> counts{};
    bool any = false;
    for (std::size_t i = 0; i < d.levels.size(); ++i) {
        if (m.flags[i]) {
            ++counts[d.levels[i]];
            any = true;
        }
    }
    if (!any) throw pipeline_error("no salient pixels: the saliency threshold selected nothing");

    SalientDepths sd;
    for (int k = 0; k < 256; ++k) {
        if (counts[k] > 0) {
            sd.levels.push_back(static_cast<std::uint8_t>(k));
            sd.pixel_counts.push_back(counts[k]);
        }
    }
    return sd;
}

std::vector<int> forward_differences(const SalientDepths& sd) {
    std::vector<int> gaps;
    gaps.reserve(sd.levels.size() > 0 ? sd.levels.size() - 1 : 0);
    for (std::size_t i = 1; i < sd.levels.size(); ++i)
        gaps.push_back(static_cast<int>(sd.levels[i]) - static_cast<int>(sd.levels[i - 1]));
    return gaps;
}

std::optional<double> proximity_threshold(std::span<const int> gaps) {
    if (gaps.empty()) return std::nullopt;

    const int g_max = *std::max_element(gaps.begin(), gaps.end());
    if (std::all_of(gaps.begin(), gaps.end(), [&](int g) { return g == g_max; }))
        return static_cast<double>(g_max);  // equal gaps: nothing exceeds, single cluster

    // Normalize gaps into the 8-bit histogram domain and let Otsu split
    // within-cluster gaps from cluster breaks. Distinct integer gaps stay
    // distinct after normalization (spacing >= 255/g_max >= 1), so the split
    // is non-degenerate whenever the gaps differ.
    std::vector<std::uint8_t> normalized(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i)
        normalized[i] =
            static_cast<std::uint8_t>(std::lround(255.0 * gaps[i] / g_max));
    const int split = otsu_threshold(build_histogram(normalized));

    // Report the threshold as the largest raw gap classified below the
    // split, so `gap > threshold` holds exactly for the gaps Otsu put in the
    // upper class.
    int t_p = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i)
        if (normalized[i] <= split) t_p = std::max(t_p, gaps[i]);
    return static_cast<double>(t_p);
}

DepthOfInterest select_depth_range(const SalientDepths& sd,
                                   std::optional<double> gap_threshold,
                                   ClusterPolicy policy) {
    if (sd.levels.empty())
        throw std::invalid_argument("select_depth_range: no salient depth levels");

    struct Run {
        std::size_t first;
        std::size_t last;
        std::uint64_t pixels;
    };
    std::vector<Run> runs;
    Run current{0, 0, sd.pixel_counts[0]};
    for (std::size_t i = 1; i < sd.levels.size(); ++i) {
        const int gap = static_cast<int>(sd.levels[i]) - static_cast<int>(sd.levels[i - 1]);
        if (gap_threshold && static_cast<double>(gap) > *gap_threshold) {
            runs.push_back(current);
            current = Run{i, i, 0};
        }
        current.last = i;
        current.pixels += sd.pixel_counts[i];
    }
    runs.push_back(current);

    std::size_t chosen = 0;
    if (policy == ClusterPolicy::kLargest) {
        for (std::size_t r = 1; r < runs.size(); ++r)
            if (runs[r].pixels > runs[chosen].pixels) chosen = r;  // ties keep the lower range
    }
    return DepthOfInterest{sd.levels[runs[chosen].first], sd.levels[runs[chosen].last],
                           gap_threshold};
}

}  // namespace dof
