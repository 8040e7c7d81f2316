#include "demreg/grid.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace demreg {

Grid::Grid(GridHeader header, std::vector<double> values)
    : header_(header), values_(std::move(values)) {
    if (header_.ncols < 1 || header_.nrows < 1)
        fail(ErrorCode::MalformedHeader, "grid dimensions must be at least 1x1");
    if (!(header_.cellsize > 0.0))
        fail(ErrorCode::MalformedHeader, "cellsize must be positive");
    if (!std::isfinite(header_.nodata_value))
        fail(ErrorCode::MalformedHeader, "nodata_value must be finite");
    const std::size_t expected =
        static_cast<std::size_t>(header_.ncols) * static_cast<std::size_t>(header_.nrows);
    if (values_.size() != expected)
        fail(ErrorCode::CellCountMismatch,
             "expected " + std::to_string(expected) + " values, got " +
                 std::to_string(values_.size()));
    for (double v : values_) {
        if (!std::isfinite(v) && v != header_.nodata_value)
            fail(ErrorCode::NonFiniteValue, "grid contains a non-finite elevation");
    }
}

std::size_t Grid::valid_count() const {
    std::size_t n = 0;
    for (double v : values_)
        if (v != header_.nodata_value) ++n;
    return n;
}

bool Grid::valid_range(double& min_out, double& max_out) const {
    bool any = false;
    for (double v : values_) {
        if (v == header_.nodata_value) continue;
        if (!any) {
            min_out = max_out = v;
            any = true;
        } else {
            if (v < min_out) min_out = v;
            if (v > max_out) max_out = v;
        }
    }
    return any;
}

GeoPoint cell_to_geo(const GridHeader& header, int row, int col) {
    if (row < 0 || row >= header.nrows || col < 0 || col >= header.ncols)
        fail(ErrorCode::IndexOutOfRange,
             "cell (" + std::to_string(row) + "," + std::to_string(col) + ") outside " +
                 std::to_string(header.nrows) + "x" + std::to_string(header.ncols) + " grid");
    return GeoPoint{
        header.xllcorner + (col + 0.5) * header.cellsize,
        header.yllcorner + (header.nrows - 1 - row + 0.5) * header.cellsize,
    };
}

CellIndex geo_to_cell(const GridHeader& header, double x, double y) {
    const double u = (x - header.xllcorner) / header.cellsize;
    const double v = (y - header.yllcorner) / header.cellsize;
    if (u < 0.0 || u > header.ncols || v < 0.0 || v > header.nrows)
        fail(ErrorCode::OutOfBounds, "point (" + std::to_string(x) + "," + std::to_string(y) +
                                         ") outside grid extent");
    // A point on an interior vertical edge is equidistant from the centers on
    // either side; the tie goes to the smaller column. The bottom-up row index
    // already favors the upper (smaller) row at interior horizontal edges.
    int col = static_cast<int>(std::floor(u));
    if (static_cast<double>(col) == u && u > 0.0) --col;
    int row_from_bottom = static_cast<int>(std::floor(v));
    if (row_from_bottom == header.nrows) --row_from_bottom;
    return CellIndex{header.nrows - 1 - row_from_bottom, col};
}

bool grids_identical(const Grid& a, const Grid& b) {
    if (!(a.header() == b.header())) return false;
    if (a.values().size() != b.values().size()) return false;
    return std::memcmp(a.values().data(), b.values().data(),
                       a.values().size() * sizeof(double)) == 0;
}

} // namespace demreg
