#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dof/errors.hpp"
#include "dof/saliency.hpp"
#include "testutil.hpp"

using dof::Raster;
using dof::SaliencyMap;
using dof::SaliencyPolicy;

namespace {

SaliencyMap make_map(int w, int h, std::vector<float> v) {
    return SaliencyMap{w, h, std::move(v)};
}

}  // namespace

TEST_CASE("compute_saliency on a constant frame is all zeros") {
    const Raster flat = Raster::make(32, 20, 1, 99);
    const SaliencyMap s = dof::compute_saliency(flat);
    CHECK(std::all_of(s.values.begin(), s.values.end(), [](float v) { return v == 0.0f; }));
}

TEST_CASE("compute_saliency output stays within [0,1]") {
    const Raster img = testutil::noise_raster(48, 33, 1, 11);
    const SaliencyMap s = dof::compute_saliency(img);
    CHECK(s.width == 48);
    CHECK(s.height == 33);
    float lo = 1.0f, hi = 0.0f;
    for (float v : s.values) {
        REQUIRE(v >= 0.0f);
        REQUIRE(v <= 1.0f);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo == 0.0f);  // min-max normalization pins the extremes
    CHECK(hi == 1.0f);
}

TEST_CASE("compute_saliency highlights a bright square on a dark field") {
    Raster img = Raster::make(64, 64, 1, 20);
    for (int y = 24; y < 40; ++y)
        for (int x = 24; x < 40; ++x) img.at(x, y) = 220;

    const SaliencyMap s = dof::compute_saliency(img);
    double inside = 0.0, outside = 0.0;
    int n_in = 0, n_out = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            const bool in_square = x >= 24 && x < 40 && y >= 24 && y < 40;
            (in_square ? inside : outside) += s.at(x, y);
            (in_square ? n_in : n_out)++;
        }
    CHECK(inside / n_in > outside / n_out);
}

TEST_CASE("compute_saliency rejects frames smaller than the pyramid needs") {
    CHECK_THROWS_AS(dof::compute_saliency(Raster::make(15, 64, 1)), dof::pipeline_error);
    CHECK_THROWS_AS(dof::compute_saliency(Raster::make(64, 15, 1)), dof::pipeline_error);
    CHECK_NOTHROW(dof::compute_saliency(Raster::make(16, 16, 1)));
    CHECK_THROWS_AS(dof::compute_saliency(Raster::make(16, 16, 3)), std::invalid_argument);
}

TEST_CASE("compute_saliency is invariant to an intensity offset") {
    Raster img = testutil::noise_raster(40, 40, 1, 17);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(40 + (v % 140));  // range [40,179]
    Raster shifted = img;
    for (auto& v : shifted.data) v = static_cast<std::uint8_t>(v + 60);  // no clamping

    const SaliencyMap a = dof::compute_saliency(img);
    const SaliencyMap b = dof::compute_saliency(shifted);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        REQUIRE(std::abs(a.values[i] - b.values[i]) <= 1e-6f);
}

TEST_CASE("saliency_from_raster divides samples by 255") {
    Raster r = Raster::make(2, 1, 1);
    r.data = {0, 255};
    const SaliencyMap s = dof::saliency_from_raster(r);
    CHECK(s.values[0] == 0.0f);
    CHECK(s.values[1] == 1.0f);
    CHECK_THROWS_AS(dof::saliency_from_raster(Raster::make(2, 2, 3)), dof::input_error);
}

TEST_CASE("threshold_saliency splits a bimodal map at the valley") {
    std::vector<float> v(100, 0.1f);
    std::fill(v.begin() + 50, v.end(), 0.9f);
    const auto mask = dof::threshold_saliency(make_map(10, 10, v), SaliencyPolicy::otsu());
    for (int i = 0; i < 50; ++i) CHECK(mask.flags[i] == 0);
    for (int i = 50; i < 100; ++i) CHECK(mask.flags[i] == 1);
}

TEST_CASE("threshold_saliency marks everything on a flat map") {
    const auto m1 = dof::threshold_saliency(make_map(4, 2, std::vector<float>(8, 0.37f)),
                                            SaliencyPolicy::otsu());
    CHECK(std::all_of(m1.flags.begin(), m1.flags.end(), [](auto f) { return f == 1; }));

    // the degenerate rule overrides the fixed policy as well
    const auto m2 = dof::threshold_saliency(make_map(4, 2, std::vector<float>(8, 0.2f)),
                                            SaliencyPolicy::fixed(0.5));
    CHECK(std::all_of(m2.flags.begin(), m2.flags.end(), [](auto f) { return f == 1; }));
}

TEST_CASE("threshold_saliency fixed policy compares strictly") {
    const auto mask =
        dof::threshold_saliency(make_map(2, 1, {0.4f, 0.6f}), SaliencyPolicy::fixed(0.5));
    CHECK(mask.flags[0] == 0);
    CHECK(mask.flags[1] == 1);

    // 0.75 is exact in both float and double, so this really tests equality
    const auto at_limit =
        dof::threshold_saliency(make_map(2, 1, {0.25f, 0.75f}), SaliencyPolicy::fixed(0.75));
    CHECK(at_limit.flags[0] == 0);
    CHECK(at_limit.flags[1] == 0);  // equality does not pass a strict threshold
}

TEST_CASE("threshold_saliency fixed policy is monotone in the threshold") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    std::vector<float> v(64);
    for (auto& x : v) x = dist(rng);
    const auto map = make_map(8, 8, v);

    std::size_t prev = v.size() + 1;
    for (double t : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        const auto mask = dof::threshold_saliency(map, SaliencyPolicy::fixed(t));
        const std::size_t selected =
            static_cast<std::size_t>(std::count(mask.flags.begin(), mask.flags.end(), 1));
        CHECK(selected <= prev);
        prev = selected;
    }
}
