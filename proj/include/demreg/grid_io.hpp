#pragma once

#include <string>
#include <string_view>

#include "demreg/grid.hpp"

namespace demreg {

/// Parse an ESRI-style ASCII grid. The header is six whitespace-separated
/// keyword/value entries (`ncols`, `nrows`, `xllcorner`, `yllcorner`,
/// `cellsize`, `NODATA_value`), keywords case-insensitive, the NODATA entry
/// optional (default -9999). The payload is ncols*nrows whitespace-separated
/// numbers in file order, first text row = northernmost row. Parsing is
/// locale-independent.
Grid parse_grid(std::string_view text);

/// Emit the canonical byte-deterministic form: one header entry per line,
/// one grid row per line, single-space separators, trailing newline. Numbers
/// use the shortest representation that round-trips exactly; payload cells
/// keep a decimal point ("5.0") except nodata cells, which repeat the
/// header's nodata token verbatim.
std::string serialize_grid(const Grid& grid);

Grid read_grid_file(const std::string& path);
void write_grid_file(const std::string& path, const Grid& grid);

/// Shortest decimal representation of `v` that parses back to the same bits.
std::string format_number(double v);

} // namespace demreg
