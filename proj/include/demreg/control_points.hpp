#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "demreg/grid.hpp"

namespace demreg {

/// User-marked feature: latitude (map y), longitude (map x), elevation.
struct ControlPoint {
    double lat = 0.0;
    double lon = 0.0;
    double elevation = 0.0;

    friend bool operator==(const ControlPoint&, const ControlPoint&) = default;
};

/// Result of reading a control-point file. Duplicate triples are legal and
/// reported as warnings rather than dropped.
struct ControlPointFile {
    std::vector<ControlPoint> points;
    std::vector<std::string> warnings;
};

/// Ring of the 8 elevation differences z(neighbor) - z(center) around a cell,
/// in fixed order N, NE, E, SE, S, SW, W, NW. Differences are invariant to a
/// constant elevation offset, which is what makes the signature comparable
/// across grids with a vertical bias between them.
struct QuadSignature {
    std::array<double, 8> edges{};

    friend bool operator==(const QuadSignature&, const QuadSignature&) = default;
};

/// (row, col) offsets of the 8 ring neighbors at radius 1, same order as
/// QuadSignature::edges.
inline constexpr std::array<std::array<int, 2>, 8> kRingOffsets = {{
    {-1, 0},  // N
    {-1, 1},  // NE
    {0, 1},   // E
    {1, 1},   // SE
    {1, 0},   // S
    {1, -1},  // SW
    {0, -1},  // W
    {-1, -1}, // NW
}};

enum class MatchMethod { Direct, QuadEdge };

/// One cell of the searched grid that matched a control point. `residual` is
/// the absolute elevation mismatch (direct) or the max-norm signature
/// distance (quad-edge); candidate lists may contain false positives, which
/// the constellation stage is responsible for rejecting.
struct CandidateMatch {
    int row = 0;
    int col = 0;
    double residual = 0.0;
    MatchMethod method = MatchMethod::Direct;
};

/// Elevation tolerance plus signature tolerance for candidate search.
struct MatchTolerances {
    double tol_elev = 0.0;
    double tol_edge = 0.0;
};

/// Parse `lat,lon,elevation` lines; `#` starts a comment line and blank
/// lines are ignored. Malformed lines raise MalformedLine with the 1-based
/// line number.
ControlPointFile load_control_points(std::string_view text);

ControlPointFile load_control_points_file(const std::string& path);

/// Every non-nodata cell whose elevation lies within tol_elev of the point's,
/// ordered by (residual, row, col). An empty result is a valid no-match.
std::vector<CandidateMatch> direct_match(const Grid& grid, const ControlPoint& point,
                                         double tol_elev);

/// Signature of the ring at the given radius (default 1). The center and the
/// full ring must exist and be free of nodata.
QuadSignature quad_signature(const Grid& grid, int row, int col, int radius = 1);

/// Interior cells passing both the elevation gate and the ring comparison
/// max|sig - ref_sig| <= tol_edge, ordered by (residual, row, col) where
/// residual is that max-norm distance.
std::vector<CandidateMatch> quad_edge_match(const Grid& grid, const ControlPoint& point,
                                            const QuadSignature& ref_sig, double tol_elev,
                                            double tol_edge, int radius = 1);

/// Default tolerances derived from the grid's elevation quantization step
/// (minimum nonzero gap between sorted distinct values, capped at 1 m):
/// tol_elev = step / 2, tol_edge = 2 * tol_elev.
MatchTolerances estimate_default_tolerances(const Grid& grid);

} // namespace demreg
