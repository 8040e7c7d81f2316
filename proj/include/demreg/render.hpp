#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "demreg/grid.hpp"

namespace demreg {

using Rgb = std::array<std::uint8_t, 3>;

struct RampStop {
    double position = 0.0; // in [0, 1]
    Rgb color{0, 0, 0};
};

/// Piecewise-linear color ramp. Positions must be strictly increasing with
/// first = 0 and last = 1.
struct ColorRamp {
    std::vector<RampStop> stops;
    Rgb nodata_color{120, 120, 120};
};

/// Hypsometric default: lowland green through tan and brown to white.
ColorRamp default_ramp();

void validate_ramp(const ColorRamp& ramp);

/// Channelwise linear interpolation between the bracketing stops,
/// rounded half-up. u is clamped to [0, 1].
Rgb ramp_color(const ColorRamp& ramp, double u);

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // packed RGB, row 0 = top

    Rgb pixel(int row, int col) const {
        const size_t i = 3 * (static_cast<size_t>(row) * width + col);
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
};

/// Dynamic color coding: u = (z - zmin)/(zmax - zmin) over valid cells only.
/// A flat grid renders entirely in the stop-0 color.
Image render_grid(const Grid& grid, const ColorRamp& ramp = default_ramp());

/// Binary portable pixmap: "P6\n<width> <height>\n255\n" + raw RGB rows.
std::string encode_ppm(const Image& image);

void write_ppm_file(const Image& image, const std::string& path);

} // namespace demreg
