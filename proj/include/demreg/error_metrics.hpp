#pragma once

#include <optional>
#include <utility>

#include "demreg/grid.hpp"

namespace demreg {

/// Cellwise reference-minus-registered differences over the geometric
/// overlap of the two grids. Nodata in either source propagates.
struct DifferenceSurface {
    Grid grid;
    long n = 0; // valid difference cells
};

struct TStatResult {
    double t = 0.0;
    long dof = 0;
    bool defined = false;
};

/// The full error matrix between a reference and a registered grid:
/// mean difference (absolute and as a percentage of the reference elevation
/// range), RMSE, total squared curvature of the difference surface, and the
/// paired t-statistic of the differences against zero mean.
struct ErrorReport {
    long n = 0;
    double mean_diff = 0.0;
    double mean_diff_pct = 0.0;
    double rmse = 0.0;
    std::optional<double> tsc; // absent when the overlap has no interior stencil
    double t_stat = 0.0;
    long dof = 0;
    bool t_defined = false;
};

DifferenceSurface difference_surface(const Grid& reference, const Grid& registered);

/// mean = (1/n) sum d_i, rmse = sqrt((1/n) sum d_i^2), summed in row-major
/// order for a canonical result.
std::pair<double, double> mean_and_rmse(const DifferenceSurface& diff);

/// Mean squared 5-point discrete Laplacian over interior stencils,
/// L = (d(r+1,c) + d(r-1,c) + d(r,c+1) + d(r,c-1) - 4 d(r,c)) / h^2.
/// Stencils touching nodata are skipped rather than one-sided.
double total_squared_curvature(const DifferenceSurface& diff, double h);

/// Paired one-sample t against zero mean with dof = n - 1. When the sample
/// standard deviation is zero the statistic degenerates: a zero mean reports
/// t = 0, a nonzero mean is undefined.
TStatResult t_statistic(const DifferenceSurface& diff);

/// Assemble the report for a reference/registered pair. The percentage
/// normalizes |mean_diff| by the reference grid's valid elevation range
/// (zero range reports 0).
ErrorReport build_error_report(const Grid& reference, const Grid& registered);

} // namespace demreg
