#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace dof {

/// 256-bin histogram of 8-bit values.
struct Histogram256 {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;
};

/// Throws std::invalid_argument on an empty sequence.
Histogram256 build_histogram(std::span<const std::uint8_t> values);

/// Otsu threshold selection: the smallest k in [0,255] maximizing the
/// between-class variance
///
///   sigma_B^2(k) = w0(k) * w1(k) * (mu0(k) - mu1(k))^2
///
/// where class 0 holds levels <= k and class 1 holds levels > k, and
/// sigma_B^2 is 0 whenever either class is empty. Variances within 1e-12
/// relative tolerance are treated as ties and resolved toward smaller k.
/// If fewer than two bins are populated, returns the lowest populated bin.
int otsu_threshold(const Histogram256& h);

}  // namespace dof
