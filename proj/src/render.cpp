#include "demreg/render.hpp"

#include <cmath>
#include <fstream>

#include "demreg/error.hpp"
#include "demreg/parallel.hpp"

namespace demreg {

ColorRamp default_ramp() {
    ColorRamp ramp;
    ramp.stops = {
        {0.00, {46, 110, 60}},
        {0.35, {222, 214, 130}},
        {0.70, {140, 90, 50}},
        {1.00, {250, 250, 250}},
    };
    return ramp;
}

void validate_ramp(const ColorRamp& ramp) {
    if (ramp.stops.size() < 2) {
        fail(ErrorCode::InvalidRamp, "ramp needs at least two stops");
    }
    if (ramp.stops.front().position != 0.0 || ramp.stops.back().position != 1.0) {
        fail(ErrorCode::InvalidRamp, "ramp must span [0, 1]");
    }
    for (size_t i = 1; i < ramp.stops.size(); ++i) {
        if (!(ramp.stops[i - 1].position < ramp.stops[i].position)) {
            fail(ErrorCode::InvalidRamp, "ramp positions must be strictly increasing");
        }
    }
}

Rgb ramp_color(const ColorRamp& ramp, double u) {
    if (u <= 0.0) return ramp.stops.front().color;
    if (u >= 1.0) return ramp.stops.back().color;
    size_t hi = 1;
    while (ramp.stops[hi].position < u) ++hi;
    const RampStop& a = ramp.stops[hi - 1];
    const RampStop& b = ramp.stops[hi];
    const double t = (u - a.position) / (b.position - a.position);
    Rgb out;
    for (int ch = 0; ch < 3; ++ch) {
        const double v = a.color[ch] + t * (b.color[ch] - a.color[ch]);
        out[ch] = static_cast<std::uint8_t>(std::floor(v + 0.5)); // round half up
    }
    return out;
}

Image render_grid(const Grid& grid, const ColorRamp& ramp) {
    validate_ramp(ramp);
    double zmin = 0.0;
    double zmax = 0.0;
    if (!grid.valid_range(zmin, zmax)) {
        fail(ErrorCode::AllNodata, "render_grid: grid has no valid cells");
    }
    const double span = zmax - zmin;

    Image img;
    img.width = grid.ncols();
    img.height = grid.nrows();
    img.pixels.resize(3 * static_cast<size_t>(img.width) * img.height);
    parallel_for(grid.nrows(), [&](long r) {
        const int row = static_cast<int>(r);
        for (int c = 0; c < grid.ncols(); ++c) {
            Rgb px;
            if (grid.is_nodata(row, c)) {
                px = ramp.nodata_color;
            } else if (span > 0.0) {
                px = ramp_color(ramp, (grid.at(row, c) - zmin) / span);
            } else {
                px = ramp.stops.front().color;
            }
            const size_t i = 3 * (static_cast<size_t>(row) * img.width + c);
            img.pixels[i] = px[0];
            img.pixels[i + 1] = px[1];
            img.pixels[i + 2] = px[2];
        }
    });
    return img;
}

std::string encode_ppm(const Image& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " +
                      std::to_string(image.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

void write_ppm_file(const Image& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
    const std::string bytes = encode_ppm(image);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::IoError, "short write to " + path);
}

} // namespace demreg
