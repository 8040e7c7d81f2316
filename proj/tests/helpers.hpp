#pragma once

#include <cstdint>
#include <vector>

#include "demreg/grid.hpp"
#include "demreg/synth.hpp"

namespace demreg::test {

inline GridHeader make_header(int nrows, int ncols, double xll = 0.0, double yll = 0.0,
                              double cellsize = 1.0, double nodata = -9999.0) {
    GridHeader h;
    h.ncols = ncols;
    h.nrows = nrows;
    h.xllcorner = xll;
    h.yllcorner = yll;
    h.cellsize = cellsize;
    h.nodata_value = nodata;
    return h;
}

inline Grid make_grid(int nrows, int ncols, std::vector<double> values, double xll = 0.0,
                      double yll = 0.0, double cellsize = 1.0, double nodata = -9999.0) {
    return Grid(make_header(nrows, ncols, xll, yll, cellsize, nodata), std::move(values));
}

inline Grid const_grid(int nrows, int ncols, double z) {
    return make_grid(nrows, ncols,
                     std::vector<double>(static_cast<size_t>(nrows) * ncols, z));
}

/// Pseudo-random grid in [lo, hi] with an optional fraction of nodata holes.
inline Grid seeded_grid(std::uint64_t seed, int nrows, int ncols, double lo = 0.0,
                        double hi = 100.0, double nodata_fraction = 0.0) {
    std::vector<double> v(static_cast<size_t>(nrows) * ncols);
    for (int r = 0; r < nrows; ++r) {
        for (int c = 0; c < ncols; ++c) {
            const size_t i = static_cast<size_t>(r) * ncols + c;
            if (nodata_fraction > 0.0 && hash_unit(seed, r, c, 77) < nodata_fraction) {
                v[i] = -9999.0;
            } else {
                v[i] = lo + (hi - lo) * hash_unit(seed, r, c, 1);
            }
        }
    }
    return make_grid(nrows, ncols, std::move(v));
}

} // namespace demreg::test
