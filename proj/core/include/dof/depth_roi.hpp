#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dof/raster.hpp"
#include "dof/saliency.hpp"

namespace dof {

/// Distinct sorted depth levels found under the salient mask, with the
/// number of salient pixels observed at each level.
struct SalientDepths {
    std::vector<std::uint8_t> levels;        // strictly increasing
    std::vector<std::uint64_t> pixel_counts; // aligned with levels, each >= 1
};

/// The in-focus depth range: the closed interval spanned by the selected
/// cluster of salient depth levels. gap_threshold is the proximity threshold
/// that separated the clusters (absent when only one salient level exists).
struct DepthOfInterest {
    std::uint8_t focus_min = 0;
    std::uint8_t focus_max = 0;
    std::optional<double> gap_threshold;

    bool contains(std::uint8_t depth) const {
        return depth >= focus_min && depth <= focus_max;
    }
};

enum class ClusterPolicy {
    kLargest,  // cluster with the most salient pixels (default)
    kFirst,    // cluster containing the lowest depth level
};

/// Throws pipeline_error when the mask selects no pixels.
SalientDepths collect_salient_depths(const DepthMap& d, const SalientMask& m);

/// Gaps between consecutive salient depth levels; empty for a single level.
std::vector<int> forward_differences(const SalientDepths& sd);

/// Proximity threshold separating within-cluster gaps from cluster breaks.
///
/// Gaps are normalized to round(255*g/g_max) and the 256-bin histogram of
/// the normalized gaps is thresholded with Otsu's method; the returned value
/// is the largest raw gap classified below the split, so that exactly the
/// gaps normalized above the Otsu threshold exceed it. Equal gaps yield that
/// gap (no break); an empty gap sequence yields nullopt.
std::optional<double> proximity_threshold(std::span<const int> gaps);

/// Partitions levels into maximal runs at gaps strictly greater than the
/// threshold (one run when absent) and returns the run chosen by policy.
/// kLargest ties break toward the run with the smaller minimum level.
DepthOfInterest select_depth_range(const SalientDepths& sd,
                                   std::optional<double> gap_threshold,
                                   ClusterPolicy policy = ClusterPolicy::kLargest);

}  // namespace dof
