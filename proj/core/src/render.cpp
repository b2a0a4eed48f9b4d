#include "dof/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dof/errors.hpp"
#include "mirror.hpp"

namespace dof {

namespace {

std::uint8_t round_clamp(double v) {
    const long r = std::lround(v);
    return static_cast<std::uint8_t>(r < 0 ? 0 : r > 255 ? 255 : r);
}

}  // namespace

GaussianKernel gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_kernel: sigma must be positive");

    GaussianKernel k;
    k.sigma = sigma;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.weights.resize(2 * k.radius + 1);
    const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
    double sum = 0.0;
    for (int i = 0; i < static_cast<int>(k.weights.size()); ++i) {
        const double d = static_cast<double>(i - k.radius);
        k.weights[i] = std::exp(-d * d * inv_two_var);
        sum += k.weights[i];
    }
    for (double& w : k.weights) w /= sum;
    return k;
}

Raster blur_uniform(const Raster& img, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("blur_uniform: sigma must be >= 0");
    if (sigma == 0.0) return img;

    const GaussianKernel kernel = gaussian_kernel(sigma);
    const int w = img.width, h = img.height, ch = img.channels, r = kernel.radius;

    // horizontal pass into a float buffer, vertical pass out of it; rounding
    // to 8 bits happens once, after the second pass
    std::vector<float> tmp(img.data.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int j = -r; j <= r; ++j)
                    acc += kernel.weights[j + r] *
                           img.at(detail::mirror_index(x + j, w), y, c);
                tmp[(static_cast<std::size_t>(y) * w + x) * ch + c] = static_cast<float>(acc);
            }
        }
    }

    Raster out = Raster::make(w, h, ch);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int j = -r; j <= r; ++j) {
                    const int ym = detail::mirror_index(y + j, h);
                    acc += kernel.weights[j + r] *
                           tmp[(static_cast<std::size_t>(ym) * w + x) * ch + c];
                }
                out.at(x, y, c) = round_clamp(acc);
            }
        }
    }
    return out;
}

Raster composite_defocus(const Raster& img, const DefocusMap& dm, const SigmaTable& st,
                         unsigned max_threads) {
    if (img.width != dm.width || img.height != dm.height)
        throw std::invalid_argument("composite_defocus: image/defocus-map dimension mismatch");

    std::array<bool, 256> present{};
    for (std::uint8_t t : dm.levels) present[t] = true;

    // group the blur levels present by their sigma; one layer per distinct sigma
    std::vector<double> layer_sigma;
    std::array<int, 256> layer_of_level{};
    layer_of_level.fill(-1);
    for (int t = 1; t < 256; ++t) {
        if (!present[t]) continue;
        const auto it = st.sigma.find(t);
        if (it == st.sigma.end())
            throw pipeline_error("missing sigma entry for blur level " + std::to_string(t));
        const auto pos = std::find(layer_sigma.begin(), layer_sigma.end(), it->second);
        if (pos == layer_sigma.end()) {
            layer_of_level[t] = static_cast<int>(layer_sigma.size());
            layer_sigma.push_back(it->second);
        } else {
            layer_of_level[t] = static_cast<int>(pos - layer_sigma.begin());
        }
    }

    Raster out = img;  // level-0 pixels stay bit-exact
    if (layer_sigma.empty()) return out;

    const int ch = img.channels;
    auto render_layer = [&](int layer) {
        const Raster blurred = blur_uniform(img, layer_sigma[layer]);
        for (std::size_t p = 0; p < dm.levels.size(); ++p) {
            if (layer_of_level[dm.levels[p]] == layer) {
                for (int c = 0; c < ch; ++c) out.data[p * ch + c] = blurred.data[p * ch + c];
            }
        }
    };

    unsigned threads = max_threads == 0 ? std::thread::hardware_concurrency() : max_threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(layer_sigma.size())));

    if (threads == 1) {
        for (int layer = 0; layer < static_cast<int>(layer_sigma.size()); ++layer)
            render_layer(layer);
    } else {
        // layers write disjoint pixel sets, so the composition order is
        // irrelevant and the result matches the sequential path exactly
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t layer = t; layer < layer_sigma.size(); layer += threads)
                    render_layer(static_cast<int>(layer));
            });
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace dof
