#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "demreg/error.hpp"

namespace demreg {

/// Georeference and shape of an ASCII-grid DEM. `xllcorner`/`yllcorner` locate
/// the outer corner of the bottom-left cell; rows are stored top-first, so the
/// row/column <-> map conversion owns the vertical flip.
struct GridHeader {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 1.0;
    double nodata_value = -9999.0;

    bool operator==(const GridHeader&) const = default;
};

/// Integer cell address, row 0 = northernmost row.
struct CellIndex {
    int row = 0;
    int col = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Map-unit position (x east, y north).
struct GeoPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Row-major elevation raster. Cells equal to `header.nodata_value` carry no
/// elevation; every other value is finite. Immutable by convention once built,
/// so grids can be shared across threads freely.
class Grid {
public:
    Grid() = default;
    Grid(GridHeader header, std::vector<double> values);

    const GridHeader& header() const noexcept { return header_; }
    int nrows() const noexcept { return header_.nrows; }
    int ncols() const noexcept { return header_.ncols; }
    double cellsize() const noexcept { return header_.cellsize; }
    double nodata_value() const noexcept { return header_.nodata_value; }
    std::size_t size() const noexcept { return values_.size(); }

    double at(int row, int col) const {
        check_index(row, col);
        return values_[static_cast<std::size_t>(row) * header_.ncols + col];
    }
    double& at(int row, int col) {
        check_index(row, col);
        return values_[static_cast<std::size_t>(row) * header_.ncols + col];
    }

    bool is_nodata(int row, int col) const { return at(row, col) == header_.nodata_value; }
    bool in_range(int row, int col) const noexcept {
        return row >= 0 && row < header_.nrows && col >= 0 && col < header_.ncols;
    }

    const std::vector<double>& values() const noexcept { return values_; }
    std::vector<double>& values() noexcept { return values_; }

    /// Count of cells holding a valid (non-nodata) elevation.
    std::size_t valid_count() const;

    /// Min/max over valid cells. Returns false when the grid is all nodata.
    bool valid_range(double& min_out, double& max_out) const;

private:
    void check_index(int row, int col) const {
        if (!in_range(row, col))
            fail(ErrorCode::IndexOutOfRange,
                 "cell (" + std::to_string(row) + "," + std::to_string(col) + ") outside " +
                     std::to_string(header_.nrows) + "x" + std::to_string(header_.ncols) + " grid");
    }

    GridHeader header_;
    std::vector<double> values_;
};

/// Map coordinates of the center of cell (row, col).
GeoPoint cell_to_geo(const GridHeader& header, int row, int col);

/// Cell whose center is nearest to (x, y); points exactly on a shared cell
/// edge resolve to the smaller index. (x, y) must lie within the grid's
/// bounding rectangle (boundary included).
CellIndex geo_to_cell(const GridHeader& header, double x, double y);

/// Exact comparison: headers equal field-by-field, values bitwise identical.
bool grids_identical(const Grid& a, const Grid& b);

} // namespace demreg
