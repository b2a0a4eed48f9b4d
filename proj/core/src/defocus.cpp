#include "dof/defocus.hpp"

#include <array>
#include <stdexcept>

namespace dof {

DefocusMap build_defocus_map(const DepthMap& d, const DepthOfInterest& roi) {
    DefocusMap dm{d.width, d.height, std::vector<std::uint8_t>(d.levels.size())};
    for (std::size_t i = 0; i < d.levels.size(); ++i) {
        const int depth = d.levels[i];
        int t = 0;
        if (depth < roi.focus_min)
            t = roi.focus_min - depth;
        else if (depth > roi.focus_max)
            t = depth - roi.focus_max;
        dm.levels[i] = static_cast<std::uint8_t>(t);
    }
    return dm;
}

BlurHistogram build_blur_histogram(const DefocusMap& dm) {
    BlurHistogram bh;
    std::array<std::uint64_t, 256> counts{};
    for (std::uint8_t t : dm.levels) ++counts[t];
    for (int t = 1; t < 256; ++t) {
        if (counts[t] > 0) {
            bh.counts.emplace(t, counts[t]);
            bh.total += counts[t];
        }
    }
    return bh;
}

double compute_alpha(const BlurHistogram& bh) {
    if (bh.total == 0) return 0.0;  // everything in focus
    double weighted = 0.0;
    for (const auto& [t, count] : bh.counts)
        weighted += static_cast<double>(t) * static_cast<double>(count);
    return weighted / (static_cast<double>(bh.total) * 255.0);
}

SigmaTable build_sigma_table(const BlurHistogram& bh, const DefocusParams& params) {
    if (!(params.gamma > 1.0))
        throw std::invalid_argument("build_sigma_table: gamma must be > 1.0");

    SigmaTable st;
    st.damped = params.alpha >= params.beta;
    st.sigma.emplace(0, 0.0);
    for (const auto& [t, count] : bh.counts) {
        (void)count;
        const double s = params.alpha * static_cast<double>(t);
        st.sigma.emplace(t, st.damped ? s / params.gamma : s);
    }
    return st;
}

}  // namespace dof
