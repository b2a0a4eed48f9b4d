#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace dof {

/// 8-bit row-major pixel grid, interleaved channels. channels is 1
/// (grayscale) or 3 (RGB); data.size() == width * height * channels.
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> data;

    static Raster make(int width, int height, int channels, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

    bool operator==(const Raster&) const = default;
};

/// One 8-bit depth level per pixel. Only absolute level differences matter
/// downstream, so either orientation (near = bright or near = dark) works.
struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> levels;

    std::uint8_t at(int x, int y) const {
        return levels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const DepthMap&) const = default;
};

/// Loads a binary PGM (P5) or PPM (P6) file with maxval 255.
/// Throws input_error on missing files, malformed headers or truncated data.
Raster load_raster(const std::filesystem::path& path);

/// Writes r as binary P5 (1 channel) or P6 (3 channels), maxval 255.
/// The written file loads back to a bit-identical Raster.
void save_raster(const Raster& r, const std::filesystem::path& path);

/// Rec.601 luma (0.299 R + 0.587 G + 0.114 B), rounded to nearest.
/// Single-channel input is returned unchanged.
Raster to_grayscale(const Raster& r);

/// Reinterprets a single-channel raster as a depth map.
DepthMap depth_from_raster(const Raster& r);

}  // namespace dof
