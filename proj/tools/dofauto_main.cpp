#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dof/errors.hpp"
#include "dof/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitPipelineError = 3;

dof::SaliencyPolicy parse_saliency_policy(const std::string& text) {
    if (text == "otsu") return dof::SaliencyPolicy::otsu();
    if (text.rfind("fixed:", 0) == 0) {
        const std::string num = text.substr(6);
        double v = -1.0;
        std::size_t used = 0;
        try {
            v = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != num.size() || v < 0.0 || v > 1.0)
            throw CLI::ValidationError("--saliency-policy",
                                       "fixed threshold must be a number in [0,1]");
        return dof::SaliencyPolicy::fixed(v);
    }
    throw CLI::ValidationError("--saliency-policy", "expected 'otsu' or 'fixed:V'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dofauto: renders a shallow depth-of-field effect into an image, fully\n"
        "automatically, from a depth map and a (computed or supplied) saliency map.\n"
        "Inputs are binary PGM/PPM with maxval 255. Depth maps are 8-bit level\n"
        "grids; only absolute level differences matter, so either orientation\n"
        "(near = bright or near = dark) produces the same result."};
    app.name("dofauto");

    dof::PipelineConfig cfg;
    std::string saliency_path, defocus_path, report_path;
    std::string saliency_policy = "otsu";
    std::string cluster_policy = "largest";

    app.add_option("--image", cfg.image_path, "Input image (P5 or P6)")
        ->required();
    app.add_option("--depth", cfg.depth_path, "Depth map (P5, same dimensions as --image)")
        ->required();
    app.add_option("--saliency", saliency_path,
                   "Precomputed saliency map (P5, samples/255 used as salience); "
                   "bypasses the built-in detector");
    app.add_option("--out", cfg.out_path, "Output image path")->required();
    app.add_option("--beta", cfg.options.beta, "Damping switch threshold, in (0,1)")
        ->capture_default_str()
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    app.add_option("--gamma", cfg.options.gamma, "Damping divisor, > 1.0")
        ->capture_default_str()
        ->check(CLI::Range(std::nextafter(1.0, 2.0), 1e9));
    app.add_option("--saliency-policy", saliency_policy,
                   "Saliency binarization: 'otsu' or 'fixed:V' with V in [0,1]")
        ->capture_default_str();
    app.add_option("--cluster-policy", cluster_policy,
                   "Depth cluster selection: 'largest' (most salient pixels) or "
                   "'first' (lowest depth level)")
        ->capture_default_str()
        ->check(CLI::IsMember({"largest", "first"}));
    app.add_option("--emit-defocus-map", defocus_path,
                   "Also write the per-pixel blur levels as a P5 raster");
    app.add_option("--report", report_path,
                   "Write a JSON report (alpha, t_p, f_min, f_max, damped, "
                   "pixel_count, stage_timings_ms)");
    app.add_option("--render-threads", cfg.options.render_threads,
                   "Max threads for the layered render (0 = auto)");

    try {
        app.parse(argc, argv);
        cfg.options.saliency_policy = parse_saliency_policy(saliency_policy);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    cfg.options.cluster_policy = cluster_policy == "first" ? dof::ClusterPolicy::kFirst
                                                           : dof::ClusterPolicy::kLargest;
    if (!saliency_path.empty()) cfg.saliency_path = saliency_path;
    if (!defocus_path.empty()) cfg.defocus_map_path = defocus_path;
    if (!report_path.empty()) cfg.report_path = report_path;

    try {
        dof::run_pipeline(cfg);
    } catch (const dof::input_error& e) {
        std::fprintf(stderr, "dofauto: %s\n", e.what());
        return kExitInputError;
    } catch (const dof::pipeline_error& e) {
        std::fprintf(stderr, "dofauto: %s\n", e.what());
        return kExitPipelineError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "dofauto: %s\n", e.what());
        return kExitPipelineError;
    }
    return kExitOk;
}
