#include "demreg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "demreg/error.hpp"

namespace demreg {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Signed uniform in [-1, 1] for diamond-square displacements.
double hash_signed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                   std::uint64_t salt) {
    return 2.0 * hash_unit(seed, a, b, salt) - 1.0;
}

} // namespace

std::uint64_t hash_u64(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t salt) {
    return mix64(mix64(mix64(mix64(seed) ^ a) ^ b) ^ salt);
}

double hash_unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t salt) {
    return static_cast<double>(hash_u64(seed, a, b, salt) >> 11) * 0x1.0p-53;
}

double hash_gaussian(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
    double u1 = hash_unit(seed, row, col, 0xb0);
    double u2 = hash_unit(seed, row, col, 0xb1);
    if (u1 <= 0.0) u1 = 0x1.0p-53; // guard log(0)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

Grid generate_terrain(const SynthSpec& spec) {
    if (spec.rows < 3 || spec.cols < 3) {
        throw std::invalid_argument("generate_terrain: rows and cols must be >= 3");
    }
    if (!(spec.amplitude > 0.0)) {
        throw std::invalid_argument("generate_terrain: amplitude must be positive");
    }
    if (!(spec.roughness > 0.0 && spec.roughness < 1.0)) {
        throw std::invalid_argument("generate_terrain: roughness must be in (0, 1)");
    }
    // Smallest 2^k + 1 lattice enclosing the requested shape.
    int lattice = 3;
    while (lattice < std::max(spec.rows, spec.cols)) lattice = 2 * (lattice - 1) + 1;
    const int s = lattice;
    std::vector<double> h(static_cast<size_t>(s) * s, 0.0);
    auto at = [&](int r, int c) -> double& {
        return h[static_cast<size_t>(r) * s + c];
    };

    at(0, 0) = hash_signed(spec.seed, 0, 0, 0);
    at(0, s - 1) = hash_signed(spec.seed, 0, static_cast<std::uint64_t>(s - 1), 0);
    at(s - 1, 0) = hash_signed(spec.seed, static_cast<std::uint64_t>(s - 1), 0, 0);
    at(s - 1, s - 1) = hash_signed(spec.seed, static_cast<std::uint64_t>(s - 1),
                                   static_cast<std::uint64_t>(s - 1), 0);

    double disp = 1.0;
    for (int step = s - 1; step >= 2; step /= 2) {
        const int half = step / 2;
        // Diamond pass: square centers from their four corners.
        for (int r = half; r < s; r += step) {
            for (int c = half; c < s; c += step) {
                const double avg = (at(r - half, c - half) + at(r - half, c + half) +
                                    at(r + half, c - half) + at(r + half, c + half)) /
                                   4.0;
                at(r, c) = avg + disp * hash_signed(spec.seed, r, c, 1);
            }
        }
        // Square pass: edge midpoints from their in-range diamond neighbors.
        for (int r = 0; r < s; r += half) {
            const int c_start = ((r / half) % 2 == 0) ? half : 0;
            for (int c = c_start; c < s; c += step) {
                double sum = 0.0;
                int cnt = 0;
                if (r - half >= 0) sum += at(r - half, c), ++cnt;
                if (r + half < s) sum += at(r + half, c), ++cnt;
                if (c - half >= 0) sum += at(r, c - half), ++cnt;
                if (c + half < s) sum += at(r, c + half), ++cnt;
                at(r, c) = sum / cnt + disp * hash_signed(spec.seed, r, c, 2);
            }
        }
        disp *= spec.roughness;
    }

    // Crop, then rescale the cropped window to span the amplitude exactly.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            lo = std::min(lo, at(r, c));
            hi = std::max(hi, at(r, c));
        }
    }
    const double span = hi - lo;
    std::vector<double> values(static_cast<size_t>(spec.rows) * spec.cols);
    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            const double u = span > 0.0 ? (at(r, c) - lo) / span : 0.0;
            values[static_cast<size_t>(r) * spec.cols + c] =
                spec.base_elevation + spec.amplitude * u;
        }
    }

    GridHeader header;
    header.ncols = spec.cols;
    header.nrows = spec.rows;
    header.xllcorner = 0.0;
    header.yllcorner = 0.0;
    header.cellsize = 90.0;
    header.nodata_value = -9999.0;
    return Grid(header, std::move(values));
}

DerivedCandidate derive_candidate(const Grid& grid, int drow, int dcol,
                                  double noise_sigma, double vertical_bias,
                                  std::uint64_t seed) {
    const GridHeader& src = grid.header();
    if (std::abs(drow) >= src.nrows || std::abs(dcol) >= src.ncols) {
        fail(ErrorCode::EmptyWindow,
             "derive_candidate: offset leaves no overlap with the source");
    }
    GridHeader out = src;
    out.xllcorner = src.xllcorner + static_cast<double>(dcol) * src.cellsize;
    out.yllcorner = src.yllcorner - static_cast<double>(drow) * src.cellsize;

    std::vector<double> values(static_cast<size_t>(src.nrows) * src.ncols,
                               out.nodata_value);
    for (int r = 0; r < src.nrows; ++r) {
        const int sr = r + drow;
        if (sr < 0 || sr >= src.nrows) continue;
        for (int c = 0; c < src.ncols; ++c) {
            const int sc = c + dcol;
            if (sc < 0 || sc >= src.ncols) continue;
            if (grid.is_nodata(sr, sc)) continue;
            double z = grid.at(sr, sc) + vertical_bias;
            if (noise_sigma > 0.0) {
                z += noise_sigma * hash_gaussian(seed, static_cast<std::uint64_t>(r),
                                                 static_cast<std::uint64_t>(c));
            }
            values[static_cast<size_t>(r) * src.ncols + c] = z;
        }
    }
    Transform truth;
    truth.drow = drow;
    truth.dcol = dcol;
    return DerivedCandidate{Grid(out, std::move(values)), truth};
}

WindowRect overlap_window(const GridHeader& header, const Transform& truth) {
    WindowRect w;
    w.row0 = std::max(0, truth.drow);
    w.row1 = std::min(header.nrows, header.nrows + truth.drow);
    w.col0 = std::max(0, truth.dcol);
    w.col1 = std::min(header.ncols, header.ncols + truth.dcol);
    return w;
}

std::vector<std::pair<ControlPoint, CellIndex>> pick_control_points(
    const Grid& reference, const WindowRect& window, int count) {
    struct Pick {
        double sharpness;
        CellIndex cell;
    };
    std::vector<Pick> extrema;
    std::vector<char> taken(
        static_cast<size_t>(reference.nrows()) * reference.ncols(), 0);

    auto ring_ok = [&](int r, int c) {
        if (r < 1 || r >= reference.nrows() - 1 || c < 1 || c >= reference.ncols() - 1)
            return false;
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc)
                if (reference.is_nodata(r + dr, c + dc)) return false;
        return true;
    };

    for (int r = window.row0; r < window.row1; ++r) {
        for (int c = window.col0; c < window.col1; ++c) {
            if (!ring_ok(r, c)) continue;
            const double z = reference.at(r, c);
            bool is_max = true;
            bool is_min = true;
            double sharp = std::numeric_limits<double>::infinity();
            for (const auto& [dr, dc] : kRingOffsets) {
                const double zn = reference.at(r + dr, c + dc);
                if (zn >= z) is_max = false;
                if (zn <= z) is_min = false;
                sharp = std::min(sharp, std::abs(z - zn));
            }
            if (is_max || is_min) extrema.push_back({sharp, {r, c}});
        }
    }
    std::sort(extrema.begin(), extrema.end(), [](const Pick& a, const Pick& b) {
        if (a.sharpness != b.sharpness) return a.sharpness > b.sharpness;
        return a.cell < b.cell;
    });

    std::vector<std::pair<ControlPoint, CellIndex>> out;
    std::vector<double> used_z;
    auto accept = [&](const CellIndex& cell) {
        char& slot = taken[static_cast<size_t>(cell.row) * reference.ncols() + cell.col];
        if (slot) return;
        slot = 1;
        const auto [x, y] = cell_to_geo(reference.header(), cell.row, cell.col);
        const double z = reference.at(cell.row, cell.col);
        out.push_back({ControlPoint{y, x, z}, cell});
        used_z.push_back(z);
    };

    // First pass: pairwise-distinct elevations; second pass: any extrema.
    for (const Pick& p : extrema) {
        if (static_cast<int>(out.size()) >= count) break;
        const double z = reference.at(p.cell.row, p.cell.col);
        const bool fresh = std::none_of(used_z.begin(), used_z.end(), [&](double u) {
            return std::abs(u - z) <= 1e-9;
        });
        if (fresh) accept(p.cell);
    }
    for (const Pick& p : extrema) {
        if (static_cast<int>(out.size()) >= count) break;
        accept(p.cell);
    }
    for (int r = window.row0; r < window.row1 && static_cast<int>(out.size()) < count;
         ++r) {
        for (int c = window.col0;
             c < window.col1 && static_cast<int>(out.size()) < count; ++c) {
            if (ring_ok(r, c)) accept({r, c});
        }
    }
    return out;
}

Grid quantize_grid(const Grid& grid, double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("quantize_grid: step must be positive");
    }
    std::vector<double> values(grid.values().begin(), grid.values().end());
    for (int r = 0; r < grid.nrows(); ++r) {
        for (int c = 0; c < grid.ncols(); ++c) {
            if (grid.is_nodata(r, c)) continue;
            values[static_cast<size_t>(r) * grid.ncols() + c] =
                std::floor(grid.at(r, c) / step + 0.5) * step;
        }
    }
    return Grid(grid.header(), std::move(values));
}

Grid implant_decoys(const Grid& grid, const std::vector<CellIndex>& protect,
                    const std::vector<double>& values, int per_value,
                    std::uint64_t seed) {
    std::vector<double> cells(grid.values().begin(), grid.values().end());
    std::set<size_t> chosen; // each placement lands on a fresh cell
    auto near_protected = [&](int r, int c) {
        for (const CellIndex& p : protect) {
            if (std::abs(r - p.row) <= 1 && std::abs(c - p.col) <= 1) return true;
        }
        return false;
    };
    for (size_t v = 0; v < values.size(); ++v) {
        int placed = 0;
        for (std::uint64_t attempt = 0; placed < per_value && attempt < 1000;
             ++attempt) {
            const int r = static_cast<int>(
                hash_u64(seed, v, attempt, 11) % static_cast<std::uint64_t>(grid.nrows()));
            const int c = static_cast<int>(
                hash_u64(seed, v, attempt, 12) % static_cast<std::uint64_t>(grid.ncols()));
            if (grid.is_nodata(r, c) || near_protected(r, c)) continue;
            const size_t idx = static_cast<size_t>(r) * grid.ncols() + c;
            if (!chosen.insert(idx).second) continue;
            cells[idx] = values[v];
            ++placed;
        }
    }
    return Grid(grid.header(), std::move(cells));
}

} // namespace demreg
