#include "dof/pipeline.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "dof/errors.hpp"
#include "dof/histogram.hpp"

namespace dof {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void validate_options(const PipelineOptions& o) {
    if (!(o.beta > 0.0 && o.beta < 1.0))
        throw input_error("beta must lie in (0,1)");
    if (!(o.gamma > 1.0))
        throw input_error("gamma must be > 1.0");
    if (o.saliency_policy.kind == SaliencyPolicy::Kind::kFixed &&
        !(o.saliency_policy.value >= 0.0 && o.saliency_policy.value <= 1.0))
        throw input_error("fixed saliency threshold must lie in [0,1]");
}

}  // namespace

PipelineResult run_pipeline(const Raster& image, const DepthMap& depth,
                            const std::optional<SaliencyMap>& external_saliency,
                            const PipelineOptions& options) {
    validate_options(options);
    if (image.width != depth.width || image.height != depth.height)
        throw input_error("dimension mismatch: image is " + std::to_string(image.width) + "x" +
                          std::to_string(image.height) + ", depth map is " +
                          std::to_string(depth.width) + "x" + std::to_string(depth.height));

    PipelineResult res;
    StageTimings& ms = res.report.stage_timings_ms;

    auto t0 = Clock::now();
    SaliencyMap sal;
    if (external_saliency) {
        if (external_saliency->width != image.width || external_saliency->height != image.height)
            throw input_error("dimension mismatch: saliency map does not match the image");
        sal = *external_saliency;
    } else {
        sal = compute_saliency(to_grayscale(image));
    }
    ms.saliency = elapsed_ms(t0);

    t0 = Clock::now();
    const SalientMask mask = threshold_saliency(sal, options.saliency_policy);
    const SalientDepths sd = collect_salient_depths(depth, mask);
    const std::vector<int> gaps = forward_differences(sd);
    const std::optional<double> t_p = proximity_threshold(gaps);
    const DepthOfInterest roi = select_depth_range(sd, t_p, options.cluster_policy);
    ms.roi = elapsed_ms(t0);

    t0 = Clock::now();
    res.defocus = build_defocus_map(depth, roi);
    const BlurHistogram bh = build_blur_histogram(res.defocus);
    const double alpha = compute_alpha(bh);
    const SigmaTable st = build_sigma_table(bh, {options.beta, options.gamma, alpha});
    ms.defocus = elapsed_ms(t0);

    t0 = Clock::now();
    res.output = composite_defocus(image, res.defocus, st, options.render_threads);
    ms.render = elapsed_ms(t0);

    res.report.alpha = alpha;
    res.report.t_p = t_p;
    res.report.f_min = roi.focus_min;
    res.report.f_max = roi.focus_max;
    res.report.damped = st.damped;
    res.report.pixel_count = image.pixel_count();
    return res;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    const Raster image = load_raster(cfg.image_path);
    const DepthMap depth = depth_from_raster(load_raster(cfg.depth_path));
    std::optional<SaliencyMap> sal;
    if (cfg.saliency_path) sal = saliency_from_raster(load_raster(*cfg.saliency_path));

    PipelineResult res = run_pipeline(image, depth, sal, cfg.options);

    save_raster(res.output, cfg.out_path);
    if (cfg.defocus_map_path)
        save_raster(Raster{res.defocus.width, res.defocus.height, 1, res.defocus.levels},
                    *cfg.defocus_map_path);
    if (cfg.report_path) emit_report(res.report, *cfg.report_path);
    return res;
}

std::string report_to_json(const PipelineReport& r) {
    nlohmann::json j;
    j["alpha"] = r.alpha;
    if (r.t_p)
        j["t_p"] = *r.t_p;
    else
        j["t_p"] = nullptr;
    j["f_min"] = r.f_min;
    j["f_max"] = r.f_max;
    j["damped"] = r.damped;
    j["pixel_count"] = r.pixel_count;
    j["stage_timings_ms"] = {
        {"saliency", r.stage_timings_ms.saliency},
        {"roi", r.stage_timings_ms.roi},
        {"defocus", r.stage_timings_ms.defocus},
        {"render", r.stage_timings_ms.render},
        // subtotal comparable to timings that exclude saliency and rendering
        {"roi_defocus", r.stage_timings_ms.roi + r.stage_timings_ms.defocus},
    };
    return j.dump(2) + "\n";
}

PipelineReport report_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PipelineReport r;
    r.alpha = j.at("alpha").get<double>();
    if (!j.at("t_p").is_null()) r.t_p = j.at("t_p").get<double>();
    r.f_min = j.at("f_min").get<int>();
    r.f_max = j.at("f_max").get<int>();
    r.damped = j.at("damped").get<bool>();
    r.pixel_count = j.at("pixel_count").get<std::uint64_t>();
    const auto& t = j.at("stage_timings_ms");
    r.stage_timings_ms.saliency = t.at("saliency").get<double>();
    r.stage_timings_ms.roi = t.at("roi").get<double>();
    r.stage_timings_ms.defocus = t.at("defocus").get<double>();
    r.stage_timings_ms.render = t.at("render").get<double>();
    return r;
}

void emit_report(const PipelineReport& r, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw input_error("cannot open for writing: " + path.string());
    out << report_to_json(r);
    out.flush();
    if (!out) throw input_error("write failure: " + path.string());
}

}  // namespace dof
