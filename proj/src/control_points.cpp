#include "demreg/control_points.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace demreg {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_field(std::string_view token, double& out) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end && std::isfinite(out);
}

void sort_candidates(std::vector<CandidateMatch>& out) {
    std::sort(out.begin(), out.end(), [](const CandidateMatch& a, const CandidateMatch& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });
}

} // namespace

ControlPointFile load_control_points(std::string_view text) {
    ControlPointFile result;
    std::set<std::tuple<double, double, double>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const std::size_t comma1 = line.find(',');
        const std::size_t comma2 =
            comma1 == std::string_view::npos ? std::string_view::npos : line.find(',', comma1 + 1);
        if (comma2 == std::string_view::npos ||
            line.find(',', comma2 + 1) != std::string_view::npos)
            fail(ErrorCode::MalformedLine,
                 "line " + std::to_string(line_no) + ": expected 'lat,lon,elevation'");

        ControlPoint p;
        if (!parse_field(line.substr(0, comma1), p.lat) ||
            !parse_field(line.substr(comma1 + 1, comma2 - comma1 - 1), p.lon) ||
            !parse_field(line.substr(comma2 + 1), p.elevation))
            fail(ErrorCode::MalformedLine,
                 "line " + std::to_string(line_no) + ": non-numeric field");

        if (!seen.insert({p.lat, p.lon, p.elevation}).second)
            result.warnings.push_back("line " + std::to_string(line_no) +
                                      ": duplicate control point");
        result.points.push_back(p);
    }
    return result;
}

ControlPointFile load_control_points_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return load_control_points(buffer.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::vector<CandidateMatch> direct_match(const Grid& grid, const ControlPoint& point,
                                         double tol_elev) {
    std::vector<CandidateMatch> out;
    for (int r = 0; r < grid.nrows(); ++r) {
        for (int c = 0; c < grid.ncols(); ++c) {
            const double z = grid.at(r, c);
            if (z == grid.nodata_value()) continue;
            const double residual = std::abs(z - point.elevation);
            if (residual <= tol_elev)
                out.push_back({r, c, residual, MatchMethod::Direct});
        }
    }
    sort_candidates(out);
    return out;
}

QuadSignature quad_signature(const Grid& grid, int row, int col, int radius) {
    if (radius < 1) fail(ErrorCode::BorderCell, "ring radius must be at least 1");
    if (row < radius || row > grid.nrows() - 1 - radius || col < radius ||
        col > grid.ncols() - 1 - radius)
        fail(ErrorCode::BorderCell, "cell (" + std::to_string(row) + "," + std::to_string(col) +
                                        ") has no full ring at radius " + std::to_string(radius));
    const double center = grid.at(row, col);
    if (center == grid.nodata_value())
        fail(ErrorCode::NodataInRing, "center cell holds nodata");

    QuadSignature sig;
    for (std::size_t k = 0; k < kRingOffsets.size(); ++k) {
        const double z = grid.at(row + kRingOffsets[k][0] * radius,
                                 col + kRingOffsets[k][1] * radius);
        if (z == grid.nodata_value())
            fail(ErrorCode::NodataInRing, "ring around (" + std::to_string(row) + "," +
                                              std::to_string(col) + ") touches nodata");
        sig.edges[k] = z - center;
    }
    return sig;
}

std::vector<CandidateMatch> quad_edge_match(const Grid& grid, const ControlPoint& point,
                                            const QuadSignature& ref_sig, double tol_elev,
                                            double tol_edge, int radius) {
    std::vector<CandidateMatch> out;
    for (int r = radius; r < grid.nrows() - radius; ++r) {
        for (int c = radius; c < grid.ncols() - radius; ++c) {
            const double z = grid.at(r, c);
            if (z == grid.nodata_value()) continue;
            if (std::abs(z - point.elevation) > tol_elev) continue;

            // Elevation gate passed; compare the ring.
            double dist = 0.0;
            bool ok = true;
            for (std::size_t k = 0; k < kRingOffsets.size() && ok; ++k) {
                const double nbr =
                    grid.at(r + kRingOffsets[k][0] * radius, c + kRingOffsets[k][1] * radius);
                if (nbr == grid.nodata_value()) {
                    ok = false;
                    break;
                }
                const double d = std::abs((nbr - z) - ref_sig.edges[k]);
                if (d > tol_edge) {
                    ok = false;
                    break;
                }
                dist = std::max(dist, d);
            }
            if (ok) out.push_back({r, c, dist, MatchMethod::QuadEdge});
        }
    }
    sort_candidates(out);
    return out;
}

MatchTolerances estimate_default_tolerances(const Grid& grid) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (double v : grid.values())
        if (v != grid.nodata_value()) values.push_back(v);
    std::sort(values.begin(), values.end());

    double step = 1.0;
    bool found = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double gap = values[i] - values[i - 1];
        if (gap > 0.0 && (!found || gap < step)) {
            step = gap;
            found = true;
        }
    }
    step = std::min(step, 1.0);
    return MatchTolerances{step / 2.0, step};
}

} // namespace demreg
