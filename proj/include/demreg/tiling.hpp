#pragma once

#include <string>
#include <vector>

#include "demreg/grid.hpp"

namespace demreg {

/// Row-major set of child tiles that exactly partition a parent grid. Each
/// tile carries a full standalone header, so every child is itself a valid
/// ASCII DEM.
struct TileSet {
    std::vector<Grid> tiles;
    int tile_rows = 0;  // nominal tile height in cells
    int tile_cols = 0;  // nominal tile width in cells
    int shape_rows = 0; // tiles down
    int shape_cols = 0; // tiles across
};

/// Split `grid` into tiles of nominal size tile_rows x tile_cols. Edge tiles
/// shrink when the sizes do not divide evenly; no padding is introduced.
TileSet partition(const Grid& grid, int tile_rows, int tile_cols);

/// Reassemble tiles into the unique parent grid. The tiles must share one
/// cellsize and jointly cover a rectangle with no gaps or double coverage,
/// judged from their georeferences.
Grid assemble(const TileSet& tiles);

/// File name for tile (i, j) of a DEM called `stem`: `<stem>_r<i>_c<j>.asc`.
std::string tile_file_name(const std::string& stem, int tile_row, int tile_col);

} // namespace demreg
