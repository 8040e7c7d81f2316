#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "demreg/constellation.hpp"
#include "demreg/control_points.hpp"
#include "demreg/grid.hpp"

namespace demreg {

/// Counter-based PRNG primitives: every draw is a pure function of
/// (seed, a, b, salt), so generation order never affects results.
std::uint64_t hash_u64(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t salt);

/// Uniform draw in [0, 1).
double hash_unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t salt);

/// Standard normal draw keyed by (seed, row, col) via Box-Muller.
double hash_gaussian(std::uint64_t seed, std::uint64_t row, std::uint64_t col);

struct SynthSpec {
    std::uint64_t seed = 1;
    int rows = 65;
    int cols = 65;
    double base_elevation = 200.0;
    double amplitude = 400.0;
    double roughness = 0.5; // per-level displacement decay, in (0, 1)
};

/// Diamond-square terrain on the smallest enclosing 2^k+1 lattice, cropped
/// to rows x cols and rescaled so elevations span exactly
/// [base_elevation, base_elevation + amplitude]. Header: cellsize 90,
/// lower-left corner (0, 0).
Grid generate_terrain(const SynthSpec& spec);

struct DerivedCandidate {
    Grid grid;
    Transform truth; // the transform registration must recover
};

/// Displaces the grid by (drow, dcol) cells: candidate cell (r, c) samples
/// source cell (r + drow, c + dcol), with nodata padding where the window
/// leaves the source. Gaussian noise (sigma) and a constant vertical bias
/// are added to valid cells; the header is shifted to the displaced
/// georeference. The returned truth satisfies ref_cell = cand_cell + truth.
DerivedCandidate derive_candidate(const Grid& grid, int drow, int dcol,
                                  double noise_sigma, double vertical_bias,
                                  std::uint64_t seed);

/// Half-open cell rectangle, in reference indices.
struct WindowRect {
    int row0 = 0;
    int row1 = 0;
    int col0 = 0;
    int col1 = 0;

    bool contains(int r, int c) const {
        return r >= row0 && r < row1 && c >= col0 && c < col1;
    }
    bool empty() const { return row0 >= row1 || col0 >= col1; }
};

/// Reference-frame cells covered by a candidate of the same shape displaced
/// by the given ground-truth transform.
WindowRect overlap_window(const GridHeader& header, const Transform& truth);

/// Deterministic stand-in for a manual operator: prefers sharp local extrema
/// with pairwise-distinct elevations, then remaining extrema, then a plain
/// row-major sweep. All picks lie inside the window and carry a full valid
/// 3x3 ring in the grid. May return fewer than count on tiny windows.
std::vector<std::pair<ControlPoint, CellIndex>> pick_control_points(
    const Grid& reference, const WindowRect& window, int count);

/// Rounds valid cells half-up to the nearest multiple of step.
Grid quantize_grid(const Grid& grid, double step);

/// Writes each value at per_value hash-chosen valid cells, manufacturing
/// duplicate-elevation false positives. Avoids cells within Chebyshev
/// distance 1 of any protected cell so true quad signatures stay intact.
Grid implant_decoys(const Grid& grid, const std::vector<CellIndex>& protect,
                    const std::vector<double>& values, int per_value,
                    std::uint64_t seed);

} // namespace demreg
