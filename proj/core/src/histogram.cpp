#include "dof/histogram.hpp"

#include <algorithm>
#include <stdexcept>

namespace dof {

Histogram256 build_histogram(std::span<const std::uint8_t> values) {
    if (values.empty()) throw std::invalid_argument("build_histogram: empty input");
    Histogram256 h;
    for (std::uint8_t v : values) ++h.counts[v];
    h.total = values.size();
    return h;
}

int otsu_threshold(const Histogram256& h) {
    if (h.total == 0) throw std::invalid_argument("otsu_threshold: empty histogram");

    int populated = 0;
    int lowest = 0;
    for (int k = 0; k < 256; ++k) {
        if (h.counts[k] > 0) {
            if (populated == 0) lowest = k;
            ++populated;
        }
    }
    if (populated < 2) return lowest;

    const double total = static_cast<double>(h.total);
    double weighted_total = 0.0;
    for (int k = 0; k < 256; ++k) weighted_total += static_cast<double>(k) * h.counts[k];

    // Single sweep over candidate thresholds with running class-0 moments.
    int best_k = 0;
    double best = -1.0;
    double cum_count = 0.0;
    double cum_weighted = 0.0;
    for (int k = 0; k < 256; ++k) {
        cum_count += static_cast<double>(h.counts[k]);
        cum_weighted += static_cast<double>(k) * h.counts[k];

        const double n0 = cum_count;
        const double n1 = total - cum_count;
        double var = 0.0;
        if (n0 > 0.0 && n1 > 0.0) {
            const double mu0 = cum_weighted / n0;
            const double mu1 = (weighted_total - cum_weighted) / n1;
            var = (n0 / total) * (n1 / total) * (mu0 - mu1) * (mu0 - mu1);
        }
        // ties within 1e-12 relative tolerance keep the smaller k
        if (var > best && var - best > 1e-12 * std::max(var, best)) {
            best = var;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace dof
