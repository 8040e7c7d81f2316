#include "demreg/tiling.hpp"

#include <algorithm>
#include <cmath>

namespace demreg {

TileSet partition(const Grid& grid, int tile_rows, int tile_cols) {
    if (tile_rows < 1 || tile_rows > grid.nrows() || tile_cols < 1 || tile_cols > grid.ncols())
        fail(ErrorCode::InvalidTileSize,
             "tile size " + std::to_string(tile_rows) + "x" + std::to_string(tile_cols) +
                 " invalid for " + std::to_string(grid.nrows()) + "x" +
                 std::to_string(grid.ncols()) + " grid");

    const GridHeader& parent = grid.header();
    TileSet set;
    set.tile_rows = tile_rows;
    set.tile_cols = tile_cols;
    set.shape_rows = (grid.nrows() + tile_rows - 1) / tile_rows;
    set.shape_cols = (grid.ncols() + tile_cols - 1) / tile_cols;
    set.tiles.reserve(static_cast<std::size_t>(set.shape_rows) * set.shape_cols);

    for (int ti = 0; ti < set.shape_rows; ++ti) {
        const int row0 = ti * tile_rows;
        const int row1 = std::min(row0 + tile_rows, grid.nrows());
        for (int tj = 0; tj < set.shape_cols; ++tj) {
            const int col0 = tj * tile_cols;
            const int col1 = std::min(col0 + tile_cols, grid.ncols());

            GridHeader h;
            h.nrows = row1 - row0;
            h.ncols = col1 - col0;
            h.cellsize = parent.cellsize;
            h.nodata_value = parent.nodata_value;
            h.xllcorner = parent.xllcorner + col0 * parent.cellsize;
            // row1 is the tile's southern edge counted in rows from the top.
            h.yllcorner = parent.yllcorner + (parent.nrows - row1) * parent.cellsize;

            std::vector<double> values;
            values.reserve(static_cast<std::size_t>(h.nrows) * h.ncols);
            for (int r = row0; r < row1; ++r)
                for (int c = col0; c < col1; ++c) values.push_back(grid.at(r, c));
            set.tiles.emplace_back(h, std::move(values));
        }
    }
    return set;
}

Grid assemble(const TileSet& set) {
    if (set.tiles.empty()) fail(ErrorCode::GapOrOverlap, "no tiles to assemble");

    const double cellsize = set.tiles.front().cellsize();
    for (const Grid& t : set.tiles)
        if (t.cellsize() != cellsize)
            fail(ErrorCode::InconsistentCellsize, "tiles disagree on cellsize");

    // Union extent in map units.
    double xmin = set.tiles.front().header().xllcorner;
    double ymin = set.tiles.front().header().yllcorner;
    double xmax = xmin;
    double ymax = ymin;
    for (const Grid& t : set.tiles) {
        const GridHeader& h = t.header();
        xmin = std::min(xmin, h.xllcorner);
        ymin = std::min(ymin, h.yllcorner);
        xmax = std::max(xmax, h.xllcorner + h.ncols * cellsize);
        ymax = std::max(ymax, h.yllcorner + h.nrows * cellsize);
    }

    const auto cells_between = [cellsize](double lo, double hi) {
        const double span = (hi - lo) / cellsize;
        const double snapped = std::round(span);
        if (std::abs(span - snapped) > 1e-6)
            fail(ErrorCode::GapOrOverlap, "tile corners not aligned to the cell lattice");
        return static_cast<int>(snapped);
    };

    GridHeader out;
    out.ncols = cells_between(xmin, xmax);
    out.nrows = cells_between(ymin, ymax);
    out.cellsize = cellsize;
    out.xllcorner = xmin;
    out.yllcorner = ymin;
    out.nodata_value = set.tiles.front().nodata_value();

    std::vector<double> values(static_cast<std::size_t>(out.ncols) * out.nrows, 0.0);
    std::vector<std::uint8_t> covered(values.size(), 0);

    for (const Grid& t : set.tiles) {
        const GridHeader& h = t.header();
        const int col0 = cells_between(xmin, h.xllcorner);
        // Tile row 0 sits at the tile's northern edge.
        const int row0 = cells_between(h.yllcorner + h.nrows * cellsize, ymax);
        for (int r = 0; r < h.nrows; ++r) {
            for (int c = 0; c < h.ncols; ++c) {
                const std::size_t idx =
                    static_cast<std::size_t>(row0 + r) * out.ncols + (col0 + c);
                if (covered[idx])
                    fail(ErrorCode::GapOrOverlap, "tiles overlap at output cell (" +
                                                      std::to_string(row0 + r) + "," +
                                                      std::to_string(col0 + c) + ")");
                covered[idx] = 1;
                const double v = t.at(r, c);
                values[idx] = (v == h.nodata_value) ? out.nodata_value : v;
            }
        }
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i])
            fail(ErrorCode::GapOrOverlap,
                 "tiles leave a gap at output cell index " + std::to_string(i));

    return Grid(out, std::move(values));
}

std::string tile_file_name(const std::string& stem, int tile_row, int tile_col) {
    return stem + "_r" + std::to_string(tile_row) + "_c" + std::to_string(tile_col) + ".asc";
}

} // namespace demreg
