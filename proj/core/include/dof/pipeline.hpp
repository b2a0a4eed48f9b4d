#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "dof/defocus.hpp"
#include "dof/depth_roi.hpp"
#include "dof/raster.hpp"
#include "dof/render.hpp"
#include "dof/saliency.hpp"

namespace dof {

/// Algorithm knobs for an in-memory pipeline run.
struct PipelineOptions {
    double beta = 0.2;
    double gamma = 5.0;
    SaliencyPolicy saliency_policy = SaliencyPolicy::otsu();
    ClusterPolicy cluster_policy = ClusterPolicy::kLargest;
    unsigned render_threads = 0;  // 0 = hardware concurrency
};

/// Full file-based invocation, mirroring the CLI surface.
struct PipelineConfig {
    std::filesystem::path image_path;
    std::filesystem::path depth_path;
    std::optional<std::filesystem::path> saliency_path;
    std::filesystem::path out_path;
    std::optional<std::filesystem::path> defocus_map_path;
    std::optional<std::filesystem::path> report_path;
    PipelineOptions options;
};

struct StageTimings {
    double saliency = 0.0;  // milliseconds
    double roi = 0.0;
    double defocus = 0.0;
    double render = 0.0;

    bool operator==(const StageTimings&) const = default;
};

/// What the run computed, one JSON object per run. t_p is null when only a
/// single salient depth level exists.
struct PipelineReport {
    double alpha = 0.0;
    std::optional<double> t_p;
    int f_min = 0;
    int f_max = 0;
    bool damped = false;
    std::uint64_t pixel_count = 0;
    StageTimings stage_timings_ms;

    bool operator==(const PipelineReport&) const = default;
};

struct PipelineResult {
    Raster output;
    DefocusMap defocus;
    PipelineReport report;
};

/// saliency -> threshold -> depth clustering -> defocus map -> sigma table
/// -> layered render. When external_saliency is present the built-in
/// detector is bypassed and the supplied map is used verbatim.
PipelineResult run_pipeline(const Raster& image, const DepthMap& depth,
                            const std::optional<SaliencyMap>& external_saliency,
                            const PipelineOptions& options = {});

/// Loads inputs, runs the pipeline, writes the output image and any
/// requested defocus map / report files.
PipelineResult run_pipeline(const PipelineConfig& cfg);

std::string report_to_json(const PipelineReport& r);
PipelineReport report_from_json(const std::string& text);

/// Writes report_to_json(r) to path. Throws input_error on write failure.
void emit_report(const PipelineReport& r, const std::filesystem::path& path);

}  // namespace dof
