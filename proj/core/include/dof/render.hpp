#pragma once

#include <vector>

#include "dof/defocus.hpp"
#include "dof/raster.hpp"

namespace dof {

/// Normalized 1-D Gaussian, truncated at radius = ceil(3*sigma).
struct GaussianKernel {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> weights;  // 2*radius + 1 taps, symmetric, sum 1
};

/// Throws std::invalid_argument unless sigma > 0.
GaussianKernel gaussian_kernel(double sigma);

/// Separable Gaussian blur with mirrored boundaries (edge sample included
/// in the reflection). sigma == 0 returns a bit-exact copy. Intermediate
/// arithmetic is floating point; rounding to 8 bits happens once, at the end.
Raster blur_uniform(const Raster& img, double sigma);

/// Renders the defocus map: one full-frame blur per distinct sigma level,
/// then per-pixel layer selection. Level-0 pixels are bit-exact copies of
/// the input. Layers may be blurred concurrently (max_threads == 0 picks
/// the hardware concurrency); the output is identical either way.
/// Throws pipeline_error if a positive blur level has no sigma entry.
Raster composite_defocus(const Raster& img, const DefocusMap& dm,
                         const SigmaTable& st, unsigned max_threads = 0);

}  // namespace dof
