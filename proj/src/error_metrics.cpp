#include "demreg/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "demreg/error.hpp"

namespace demreg {

namespace {

// Integer lattice offset of grid b relative to grid a, or nullopt when the
// two lattices do not coincide.
std::optional<long> lattice_offset(double delta, double cellsize) {
    const double steps = delta / cellsize;
    const double snapped = std::round(steps);
    if (std::abs(steps - snapped) > 1e-6) return std::nullopt;
    return static_cast<long>(snapped);
}

} // namespace

DifferenceSurface difference_surface(const Grid& reference, const Grid& registered) {
    const GridHeader& a = reference.header();
    const GridHeader& b = registered.header();
    if (a.cellsize != b.cellsize) {
        fail(ErrorCode::CellsizeMismatch,
             "difference_surface: cellsize " + std::to_string(a.cellsize) + " vs " +
                 std::to_string(b.cellsize));
    }
    const double cs = a.cellsize;
    const auto col_off = lattice_offset(b.xllcorner - a.xllcorner, cs);
    // Row indices count from the top edge, so align the grids by their tops.
    const double a_top = a.yllcorner + a.nrows * cs;
    const double b_top = b.yllcorner + b.nrows * cs;
    const auto row_off = lattice_offset(a_top - b_top, cs);
    if (!col_off || !row_off) {
        fail(ErrorCode::MisalignedGrids,
             "difference_surface: grids are not on a common cell lattice");
    }
    // Overlap window in reference indices; registered cell (r, c) maps to
    // reference cell (r + row_off, c + col_off).
    const long r0 = std::max<long>(0, *row_off);
    const long r1 = std::min<long>(a.nrows, *row_off + b.nrows);
    const long c0 = std::max<long>(0, *col_off);
    const long c1 = std::min<long>(a.ncols, *col_off + b.ncols);
    if (r0 >= r1 || c0 >= c1) {
        fail(ErrorCode::NoOverlap, "difference_surface: grids do not overlap");
    }

    const long out_rows = r1 - r0;
    const long out_cols = c1 - c0;
    std::vector<double> values(static_cast<size_t>(out_rows * out_cols));
    std::vector<char> valid(values.size(), 0);
    long n = 0;
    double min_valid = std::numeric_limits<double>::infinity();
    for (long r = r0; r < r1; ++r) {
        for (long c = c0; c < c1; ++c) {
            const size_t out = static_cast<size_t>((r - r0) * out_cols + (c - c0));
            const int ar = static_cast<int>(r);
            const int ac = static_cast<int>(c);
            const int br = static_cast<int>(r - *row_off);
            const int bc = static_cast<int>(c - *col_off);
            if (reference.is_nodata(ar, ac) || registered.is_nodata(br, bc)) continue;
            const double d = reference.at(ar, ac) - registered.at(br, bc);
            values[out] = d;
            valid[out] = 1;
            ++n;
            min_valid = std::min(min_valid, d);
        }
    }

    // Pick a nodata sentinel no valid difference can collide with.
    double sentinel = a.nodata_value;
    if (n > 0) {
        bool collides = false;
        for (size_t i = 0; i < values.size(); ++i) {
            if (valid[i] && values[i] == sentinel) {
                collides = true;
                break;
            }
        }
        if (collides) sentinel = std::floor(min_valid) - 1.0;
    }
    for (size_t i = 0; i < values.size(); ++i) {
        if (!valid[i]) values[i] = sentinel;
    }

    GridHeader h;
    h.ncols = static_cast<int>(out_cols);
    h.nrows = static_cast<int>(out_rows);
    h.cellsize = cs;
    h.nodata_value = sentinel;
    h.xllcorner = a.xllcorner + static_cast<double>(c0) * cs;
    h.yllcorner = a.yllcorner + static_cast<double>(a.nrows - r1) * cs;
    return DifferenceSurface{Grid(h, std::move(values)), n};
}

std::pair<double, double> mean_and_rmse(const DifferenceSurface& diff) {
    if (diff.n <= 0) {
        fail(ErrorCode::EmptySurface, "mean_and_rmse: no valid difference cells");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    const Grid& g = diff.grid;
    for (int r = 0; r < g.nrows(); ++r) {
        for (int c = 0; c < g.ncols(); ++c) {
            if (g.is_nodata(r, c)) continue;
            const double d = g.at(r, c);
            sum += d;
            sum_sq += d * d;
        }
    }
    const double n = static_cast<double>(diff.n);
    return {sum / n, std::sqrt(sum_sq / n)};
}

double total_squared_curvature(const DifferenceSurface& diff, double h) {
    const Grid& g = diff.grid;
    if (g.nrows() < 3 || g.ncols() < 3) {
        fail(ErrorCode::NoInteriorCells,
             "total_squared_curvature: surface has no interior cells");
    }
    if (!(h > 0.0)) {
        fail(ErrorCode::NoInteriorCells, "total_squared_curvature: step must be positive");
    }
    double sum = 0.0;
    long count = 0;
    const double h2 = h * h;
    for (int r = 1; r + 1 < g.nrows(); ++r) {
        for (int c = 1; c + 1 < g.ncols(); ++c) {
            if (g.is_nodata(r, c) || g.is_nodata(r - 1, c) || g.is_nodata(r + 1, c) ||
                g.is_nodata(r, c - 1) || g.is_nodata(r, c + 1)) {
                continue;
            }
            const double lap = (g.at(r + 1, c) + g.at(r - 1, c) + g.at(r, c + 1) +
                                g.at(r, c - 1) - 4.0 * g.at(r, c)) /
                               h2;
            sum += lap * lap;
            ++count;
        }
    }
    if (count == 0) {
        fail(ErrorCode::NoInteriorCells,
             "total_squared_curvature: every interior stencil touches nodata");
    }
    return sum / static_cast<double>(count);
}

TStatResult t_statistic(const DifferenceSurface& diff) {
    if (diff.n < 2) {
        fail(ErrorCode::TooFewSamples, "t_statistic: need at least two samples");
    }
    const auto [mean, rmse] = mean_and_rmse(diff);
    (void)rmse;
    double ss = 0.0;
    const Grid& g = diff.grid;
    for (int r = 0; r < g.nrows(); ++r) {
        for (int c = 0; c < g.ncols(); ++c) {
            if (g.is_nodata(r, c)) continue;
            const double d = g.at(r, c) - mean;
            ss += d * d;
        }
    }
    const double n = static_cast<double>(diff.n);
    const double s = std::sqrt(ss / (n - 1.0));
    TStatResult out;
    out.dof = diff.n - 1;
    if (s > 0.0) {
        out.t = mean / (s / std::sqrt(n));
        out.defined = true;
    } else if (mean == 0.0) {
        out.t = 0.0; // constant zero surface: exact agreement
        out.defined = true;
    } else {
        out.defined = false; // constant nonzero bias: t diverges
    }
    return out;
}

ErrorReport build_error_report(const Grid& reference, const Grid& registered) {
    const DifferenceSurface diff = difference_surface(reference, registered);
    ErrorReport report;
    report.n = diff.n;
    const auto [mean, rmse] = mean_and_rmse(diff);
    report.mean_diff = mean;
    report.rmse = rmse;
    double zmin = 0.0;
    double zmax = 0.0;
    const double span = reference.valid_range(zmin, zmax) ? zmax - zmin : 0.0;
    report.mean_diff_pct = span > 0.0 ? 100.0 * std::abs(mean) / span : 0.0;
    try {
        report.tsc = total_squared_curvature(diff, reference.header().cellsize);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoInteriorCells) throw;
        report.tsc = std::nullopt;
    }
    if (diff.n >= 2) {
        const TStatResult t = t_statistic(diff);
        report.t_stat = t.t;
        report.dof = t.dof;
        report.t_defined = t.defined;
    } else {
        report.dof = diff.n - 1;
        report.t_defined = false;
    }
    return report;
}

} // namespace demreg
