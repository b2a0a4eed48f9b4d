#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dof/depth_roi.hpp"
#include "dof/raster.hpp"

namespace dof {

/// Per-pixel linear blur level: the depth distance to the in-focus range.
/// 0 exactly for pixels whose depth lies inside the range; bounded by 255.
struct DefocusMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> levels;

    std::uint8_t at(int x, int y) const {
        return levels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const DefocusMap&) const = default;
};

/// Pixel counts per distinct positive blur level.
struct BlurHistogram {
    std::map<int, std::uint64_t> counts;  // key >= 1
    std::uint64_t total = 0;
};

struct DefocusParams {
    double beta = 0.2;   // damping switch threshold, in (0,1)
    double gamma = 5.0;  // damping divisor, > 1.0
    double alpha = 0.0;  // normalized blur adjustment factor, in [0,1]
};

/// Gaussian standard deviation per blur level; level 0 always maps to 0.
/// damped records which branch produced the table (alpha >= beta).
struct SigmaTable {
    std::map<int, double> sigma;
    bool damped = false;
};

/// Blur level per pixel: 0 inside [focus_min, focus_max], otherwise the
/// distance to the nearer interval endpoint.
DefocusMap build_defocus_map(const DepthMap& d, const DepthOfInterest& roi);

/// Counts pixels at each distinct positive blur level; level-0 pixels are
/// excluded.
BlurHistogram build_blur_histogram(const DefocusMap& dm);

/// Normalized expectation of the positive blur levels:
/// sum_t (count_t / total) * t / 255. An empty histogram (everything in
/// focus) yields 0.
double compute_alpha(const BlurHistogram& bh);

/// sigma_t = alpha * t when alpha < beta, else alpha * t / gamma.
/// Throws std::invalid_argument when gamma <= 1.0.
SigmaTable build_sigma_table(const BlurHistogram& bh, const DefocusParams& params);

}  // namespace dof
