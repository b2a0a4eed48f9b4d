#include "dof/raster.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "dof/errors.hpp"

namespace dof {

namespace {

void require_valid(const Raster& r, const char* who) {
    if (r.width < 1 || r.height < 1)
        throw std::invalid_argument(std::string(who) + ": dimensions must be positive");
    if (r.channels != 1 && r.channels != 3)
        throw std::invalid_argument(std::string(who) + ": channels must be 1 or 3");
    if (r.data.size() != r.pixel_count() * r.channels)
        throw std::invalid_argument(std::string(who) + ": data length does not match dimensions");
}

// Next header token, skipping whitespace and '#' comment lines.
bool next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) break;
    }
    if (c == EOF) return false;
    do {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    } while (c != EOF && !std::isspace(c) && c != '#');
    if (c == '#') in.putback('#');
    return true;
}

int parse_header_int(std::istream& in, const std::filesystem::path& path, const char* what) {
    std::string tok;
    if (!next_token(in, tok))
        throw input_error("malformed header in " + path.string() + ": missing " + what);
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw input_error("malformed header in " + path.string() + ": bad " + what + " '" + tok + "'");
    }
}

}  // namespace

Raster Raster::make(int width, int height, int channels, std::uint8_t fill) {
    Raster r;
    r.width = width;
    r.height = height;
    r.channels = channels;
    r.data.assign(static_cast<std::size_t>(width) * height * channels, fill);
    require_valid(r, "Raster::make");
    return r;
}

Raster load_raster(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("file not found or unreadable: " + path.string());

    std::string magic;
    if (!next_token(in, magic) || (magic != "P5" && magic != "P6"))
        throw input_error("malformed header in " + path.string() + ": bad magic '" + magic + "'");

    const int channels = magic == "P5" ? 1 : 3;
    const int width = parse_header_int(in, path, "width");
    const int height = parse_header_int(in, path, "height");
    const int maxval = parse_header_int(in, path, "maxval");
    if (width < 1 || height < 1)
        throw input_error("malformed header in " + path.string() + ": nonpositive dimensions");
    if (maxval != 255)
        throw input_error("malformed header in " + path.string() + ": unsupported maxval " +
                          std::to_string(maxval));
    // exactly one whitespace byte separates the header from the samples;
    // next_token has already consumed it.

    Raster r;
    r.width = width;
    r.height = height;
    r.channels = channels;
    r.data.resize(r.pixel_count() * channels);
    in.read(reinterpret_cast<char*>(r.data.data()), static_cast<std::streamsize>(r.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != r.data.size())
        throw input_error("truncated data in " + path.string() + ": expected " +
                          std::to_string(r.data.size()) + " samples, got " +
                          std::to_string(in.gcount()));
    return r;
}

void save_raster(const Raster& r, const std::filesystem::path& path) {
    require_valid(r, "save_raster");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot open for writing: " + path.string());
    out << (r.channels == 1 ? "P5" : "P6") << "\n"
        << r.width << " " << r.height << "\n"
        << "255\n";
    out.write(reinterpret_cast<const char*>(r.data.data()),
              static_cast<std::streamsize>(r.data.size()));
    out.flush();
    if (!out) throw input_error("write failure: " + path.string());
}

Raster to_grayscale(const Raster& r) {
    require_valid(r, "to_grayscale");
    if (r.channels == 1) return r;

    Raster g;
    g.width = r.width;
    g.height = r.height;
    g.channels = 1;
    g.data.resize(g.pixel_count());
    for (std::size_t p = 0; p < g.data.size(); ++p) {
        const double y = 0.299 * r.data[3 * p] + 0.587 * r.data[3 * p + 1] +
                         0.114 * r.data[3 * p + 2];
        const long v = std::lround(y);
        g.data[p] = static_cast<std::uint8_t>(v < 0 ? 0 : v > 255 ? 255 : v);
    }
    return g;
}

DepthMap depth_from_raster(const Raster& r) {
    require_valid(r, "depth_from_raster");
    if (r.channels != 1)
        throw input_error("depth map must be a single-channel (P5) raster");
    return DepthMap{r.width, r.height, r.data};
}

}  // namespace dof
