#pragma once

#include <cstdint>
#include <vector>

#include "dof/raster.hpp"

namespace dof {

/// Per-pixel salience in [0,1], row-major.
struct SaliencyMap {
    int width = 0;
    int height = 0;
    std::vector<float> values;

    float at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const SaliencyMap&) const = default;
};

/// Binarized salience. flags are 0/1, row-major.
struct SalientMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> flags;

    bool at(int x, int y) const {
        return flags[static_cast<std::size_t>(y) * width + x] != 0;
    }

    bool operator==(const SalientMask&) const = default;
};

struct SaliencyPolicy {
    enum class Kind { kOtsu, kFixed };
    Kind kind = Kind::kOtsu;
    double value = 0.0;  // fixed threshold, only meaningful for kFixed

    static SaliencyPolicy otsu() { return {Kind::kOtsu, 0.0}; }
    static SaliencyPolicy fixed(double v) { return {Kind::kFixed, v}; }
};

/// Built-in center-surround saliency detector.
///
/// Builds a 5-level Gaussian pyramid (5-tap binomial smoothing, factor-2
/// decimation), accumulates |center - surround| for center levels {0,1}
/// against surrounds two and three octaves coarser (nearest-neighbor
/// upsampled), sums the accumulations at full resolution and min-max
/// normalizes to [0,1]. A flat response normalizes to all zeros.
///
/// Throws pipeline_error if either dimension is below 16.
SaliencyMap compute_saliency(const Raster& gray);

/// Ingests an externally produced map: 8-bit samples divided by 255.
SaliencyMap saliency_from_raster(const Raster& r);

/// Otsu policy: quantizes values to 256 bins (round(v*255)), thresholds the
/// bin histogram, marks bins strictly above the threshold. Fixed policy:
/// marks values strictly above policy.value. If every value is equal, the
/// whole frame is marked salient regardless of policy (downstream this
/// degenerates to an all-in-focus output).
SalientMask threshold_saliency(const SaliencyMap& s, const SaliencyPolicy& policy);

}  // namespace dof
