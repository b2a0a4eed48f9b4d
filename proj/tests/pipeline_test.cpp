#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dof/errors.hpp"
#include "dof/pipeline.hpp"
#include "dof/render.hpp"
#include "testutil.hpp"

using dof::DepthMap;
using dof::PipelineOptions;
using dof::Raster;
using dof::SaliencyMap;

namespace {

// Square of in-focus content on a single background plane, marked by an
// external saliency map. The whole background sits at one blur level, so
// every report field is predictable in closed form.
struct TwoPlaneScene {
    Raster image;
    DepthMap depth;
    SaliencyMap saliency;
    std::vector<std::uint8_t> fg_mask;  // 1 inside the square
};

TwoPlaneScene two_plane_scene(int size = 64) {
    TwoPlaneScene s;
    s.image = testutil::noise_raster(size, size, 3, 127);
    s.depth = DepthMap{size, size, std::vector<std::uint8_t>(size * size, 200)};
    s.saliency = SaliencyMap{size, size, std::vector<float>(size * size, 0.0f)};
    s.fg_mask.assign(static_cast<std::size_t>(size) * size, 0);
    for (int y = size / 4; y < 3 * size / 4; ++y) {
        for (int x = size / 4; x < 3 * size / 4; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * size + x;
            s.depth.levels[i] = 100;
            s.saliency.values[i] = 1.0f;
            s.fg_mask[i] = 1;
        }
    }
    return s;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("two-plane scene: focus, alpha, damping and the render all line up") {
    const TwoPlaneScene s = two_plane_scene();
    const auto res = dof::run_pipeline(s.image, s.depth, s.saliency);

    CHECK(res.report.f_min == 100);
    CHECK(res.report.f_max == 100);
    CHECK_FALSE(res.report.t_p.has_value());  // single salient depth level
    CHECK(res.report.alpha == doctest::Approx(100.0 / 255.0).epsilon(1e-12));
    CHECK(res.report.damped);  // 100/255 > 0.2
    CHECK(res.report.pixel_count == 64 * 64);

    const double sigma_bg = (100.0 / 255.0) * 100.0 / 5.0;
    const Raster bg_layer = dof::blur_uniform(s.image, sigma_bg);
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * 64 + x;
            CHECK(res.defocus.levels[i] == (s.fg_mask[i] ? 0 : 100));
            for (int c = 0; c < 3; ++c) {
                const auto expected =
                    s.fg_mask[i] ? s.image.at(x, y, c) : bg_layer.at(x, y, c);
                REQUIRE(res.output.at(x, y, c) == expected);
            }
        }
    }
}

TEST_CASE("constant depth degenerates to an identity render") {
    const Raster image = testutil::noise_raster(32, 32, 3, 131);
    const DepthMap depth{32, 32, std::vector<std::uint8_t>(32 * 32, 77)};
    const auto res = dof::run_pipeline(image, depth, std::nullopt);

    CHECK(res.output == image);
    CHECK(res.report.alpha == 0.0);
    CHECK(res.report.f_min == 77);
    CHECK(res.report.f_max == 77);
    CHECK_FALSE(res.report.damped);
    CHECK(std::all_of(res.defocus.levels.begin(), res.defocus.levels.end(),
                      [](std::uint8_t t) { return t == 0; }));
}

TEST_CASE("cluster policy selects different depth runs") {
    const int size = 32;
    const Raster image = testutil::noise_raster(size, size, 3, 137);
    DepthMap depth{size, size, std::vector<std::uint8_t>(size * size)};
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            depth.levels[static_cast<std::size_t>(y) * size + x] =
                x < 4 ? 10 : (x % 2 ? 200 : 201);
    // flat saliency marks everything salient under either policy
    const SaliencyMap flat{size, size, std::vector<float>(size * size, 1.0f)};

    PipelineOptions first;
    first.cluster_policy = dof::ClusterPolicy::kFirst;
    const auto res_first = dof::run_pipeline(image, depth, flat, first);
    CHECK(res_first.report.f_min == 10);
    CHECK(res_first.report.f_max == 10);

    PipelineOptions largest;  // default policy, spelled out
    largest.cluster_policy = dof::ClusterPolicy::kLargest;
    const auto res_largest = dof::run_pipeline(image, depth, flat, largest);
    CHECK(res_largest.report.f_min == 200);
    CHECK(res_largest.report.f_max == 201);

    REQUIRE(res_first.report.t_p.has_value());
    CHECK(res_first.report.t_p == res_largest.report.t_p);
}

TEST_CASE("option validation") {
    const Raster image = testutil::noise_raster(16, 16, 1, 139);
    const DepthMap depth{16, 16, std::vector<std::uint8_t>(256, 5)};

    PipelineOptions o;
    o.beta = 0.0;
    CHECK_THROWS_AS(dof::run_pipeline(image, depth, std::nullopt, o), dof::input_error);
    o.beta = 1.0;
    CHECK_THROWS_AS(dof::run_pipeline(image, depth, std::nullopt, o), dof::input_error);

    o = PipelineOptions{};
    o.gamma = 1.0;
    CHECK_THROWS_AS(dof::run_pipeline(image, depth, std::nullopt, o), dof::input_error);

    o = PipelineOptions{};
    o.saliency_policy = dof::SaliencyPolicy::fixed(1.5);
    CHECK_THROWS_AS(dof::run_pipeline(image, depth, std::nullopt, o), dof::input_error);
}

TEST_CASE("dimension mismatches are input errors") {
    const Raster image = testutil::noise_raster(16, 16, 3, 149);
    const DepthMap bad_depth{16, 15, std::vector<std::uint8_t>(240, 5)};
    CHECK_THROWS_AS(dof::run_pipeline(image, bad_depth, std::nullopt), dof::input_error);

    const DepthMap depth{16, 16, std::vector<std::uint8_t>(256, 5)};
    const SaliencyMap bad_sal{8, 8, std::vector<float>(64, 1.0f)};
    CHECK_THROWS_AS(dof::run_pipeline(image, depth, bad_sal), dof::input_error);
}

TEST_CASE("report JSON carries every field and round-trips") {
    dof::PipelineReport r;
    r.alpha = 0.123456789;
    r.t_p = 2.0;
    r.f_min = 90;
    r.f_max = 120;
    r.damped = true;
    r.pixel_count = 307200;
    r.stage_timings_ms = {1.25, 0.5, 0.25, 40.0};

    const std::string text = dof::report_to_json(r);
    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("alpha").get<double>() == r.alpha);
    CHECK(j.at("t_p").get<double>() == 2.0);
    CHECK(j.at("f_min").get<int>() == 90);
    CHECK(j.at("f_max").get<int>() == 120);
    CHECK(j.at("damped").get<bool>() == true);
    CHECK(j.at("pixel_count").get<std::uint64_t>() == 307200);
    const auto& t = j.at("stage_timings_ms");
    CHECK(t.at("saliency").get<double>() == 1.25);
    CHECK(t.at("roi").get<double>() == 0.5);
    CHECK(t.at("defocus").get<double>() == 0.25);
    CHECK(t.at("render").get<double>() == 40.0);
    CHECK(t.at("roi_defocus").get<double>() == doctest::Approx(0.75).epsilon(1e-12));

    CHECK(dof::report_from_json(text) == r);

    r.t_p.reset();
    const std::string no_tp = dof::report_to_json(r);
    CHECK(nlohmann::json::parse(no_tp).at("t_p").is_null());
    CHECK(dof::report_from_json(no_tp) == r);
}

TEST_CASE("file-based run writes the requested artifacts") {
    const TwoPlaneScene s = two_plane_scene(32);
    testutil::TempDir dir("pipeline");

    dof::save_raster(s.image, dir.path() / "in.ppm");
    dof::save_raster(Raster{32, 32, 1, s.depth.levels}, dir.path() / "depth.pgm");
    Raster sal8 = Raster::make(32, 32, 1);
    for (std::size_t i = 0; i < sal8.data.size(); ++i)
        sal8.data[i] = s.fg_mask[i] ? 255 : 0;
    dof::save_raster(sal8, dir.path() / "sal.pgm");

    dof::PipelineConfig cfg;
    cfg.image_path = dir.path() / "in.ppm";
    cfg.depth_path = dir.path() / "depth.pgm";
    cfg.saliency_path = dir.path() / "sal.pgm";
    cfg.out_path = dir.path() / "out.ppm";
    cfg.defocus_map_path = dir.path() / "dm.pgm";
    cfg.report_path = dir.path() / "report.json";

    const auto res = dof::run_pipeline(cfg);

    const Raster out = dof::load_raster(cfg.out_path);
    CHECK(out == res.output);

    const Raster dm = dof::load_raster(*cfg.defocus_map_path);
    CHECK(dm.channels == 1);
    CHECK(dm.data == res.defocus.levels);

    CHECK(dof::report_from_json(slurp(*cfg.report_path)) == res.report);
    CHECK(res.report.f_min == 100);
    CHECK(res.report.f_max == 100);
}

TEST_CASE("file-based run propagates load failures") {
    testutil::TempDir dir("pipeline");
    dof::PipelineConfig cfg;
    cfg.image_path = dir.path() / "missing.ppm";
    cfg.depth_path = dir.path() / "missing.pgm";
    cfg.out_path = dir.path() / "out.ppm";
    CHECK_THROWS_AS(dof::run_pipeline(cfg), dof::input_error);
}

TEST_CASE("emit_report rejects unwritable destinations") {
    dof::PipelineReport r;
    CHECK_THROWS_AS(dof::emit_report(r, "/nonexistent-dir/report.json"), dof::input_error);
}
