#include "demreg/registration.hpp"

#include <algorithm>

namespace demreg {

const char* merge_policy_name(MergePolicy policy) {
    switch (policy) {
        case MergePolicy::ReferencePriority: return "reference-priority";
        case MergePolicy::CandidatePriority: return "candidate-priority";
        case MergePolicy::Average: return "average";
    }
    return "unknown";
}

MergePolicy parse_merge_policy(const std::string& name) {
    if (name == "reference-priority" || name == "reference") return MergePolicy::ReferencePriority;
    if (name == "candidate-priority" || name == "candidate") return MergePolicy::CandidatePriority;
    if (name == "average") return MergePolicy::Average;
    throw std::invalid_argument("unknown merge policy '" + name + "'");
}

MergeResult merge_grids(const Grid& reference, const Grid& candidate, const Transform& transform,
                        MergePolicy policy) {
    if (reference.cellsize() != candidate.cellsize())
        fail(ErrorCode::CellsizeMismatch,
             "reference cellsize " + std::to_string(reference.cellsize()) + " vs candidate " +
                 std::to_string(candidate.cellsize()));

    // Reference-frame rectangles: the reference occupies rows [0, nrows), the
    // candidate occupies rows [drow, drow + nrows) after the transform.
    const int cand_row0 = transform.drow;
    const int cand_col0 = transform.dcol;
    const int row_min = std::min(0, cand_row0);
    const int col_min = std::min(0, cand_col0);
    const int row_max = std::max(reference.nrows(), cand_row0 + candidate.nrows());
    const int col_max = std::max(reference.ncols(), cand_col0 + candidate.ncols());

    const GridHeader& ref = reference.header();
    GridHeader out;
    out.nrows = row_max - row_min;
    out.ncols = col_max - col_min;
    out.cellsize = ref.cellsize;
    out.nodata_value = ref.nodata_value;
    out.xllcorner = ref.xllcorner + col_min * ref.cellsize;
    out.yllcorner = ref.yllcorner + (ref.nrows - row_max) * ref.cellsize;

    std::vector<double> values(static_cast<std::size_t>(out.nrows) * out.ncols,
                               out.nodata_value);
    long overlap_cells = 0;

    for (int r = 0; r < out.nrows; ++r) {
        const int fr = r + row_min; // reference-frame row
        for (int c = 0; c < out.ncols; ++c) {
            const int fc = c + col_min;

            const bool in_ref = reference.in_range(fr, fc);
            const bool in_cand = candidate.in_range(fr - cand_row0, fc - cand_col0);
            double ref_v = out.nodata_value;
            double cand_v = out.nodata_value;
            bool ref_valid = false;
            bool cand_valid = false;
            if (in_ref) {
                ref_v = reference.at(fr, fc);
                ref_valid = ref_v != reference.nodata_value();
            }
            if (in_cand) {
                cand_v = candidate.at(fr - cand_row0, fc - cand_col0);
                cand_valid = cand_v != candidate.nodata_value();
            }
            if (in_ref && in_cand) ++overlap_cells;

            double v = out.nodata_value;
            if (ref_valid && cand_valid) {
                switch (policy) {
                    case MergePolicy::ReferencePriority: v = ref_v; break;
                    case MergePolicy::CandidatePriority: v = cand_v; break;
                    case MergePolicy::Average: v = 0.5 * (ref_v + cand_v); break;
                }
            } else if (ref_valid) {
                v = ref_v;
            } else if (cand_valid) {
                v = cand_v;
            }
            values[static_cast<std::size_t>(r) * out.ncols + c] = v;
        }
    }

    MergeResult result{Grid(out, std::move(values)), overlap_cells, overlap_cells == 0};
    return result;
}

Grid apply_transform(const Grid& reference, const Grid& candidate, const Transform& transform) {
    if (reference.cellsize() != candidate.cellsize())
        fail(ErrorCode::CellsizeMismatch,
             "reference cellsize " + std::to_string(reference.cellsize()) + " vs candidate " +
                 std::to_string(candidate.cellsize()));
    const GridHeader& ref = reference.header();
    GridHeader h = candidate.header();
    h.xllcorner = ref.xllcorner + transform.dcol * ref.cellsize;
    h.yllcorner =
        ref.yllcorner + (ref.nrows - (transform.drow + candidate.nrows())) * ref.cellsize;
    return Grid(h, candidate.values());
}

} // namespace demreg
