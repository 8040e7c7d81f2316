#pragma once

#include <string>

#include "demreg/constellation.hpp"
#include "demreg/grid.hpp"

namespace demreg {

/// How overlap cells are resolved when both grids hold valid data.
enum class MergePolicy { ReferencePriority, CandidatePriority, Average };

const char* merge_policy_name(MergePolicy policy);
MergePolicy parse_merge_policy(const std::string& name);

struct MergeResult {
    Grid grid;
    long overlap_cells = 0; // cells covered by both source rectangles
    bool empty_overlap = false;
};

/// Combine reference and candidate into one grid covering the union of their
/// extents, with the candidate placed through `transform`. Cells covered by
/// one source copy it; overlap cells resolve per policy, with nodata in one
/// source deferring to the other; uncovered cells become nodata. The output
/// georeference is anchored to the union's lower-left corner in the
/// reference frame. Disjoint inputs still merge, flagged as empty overlap.
MergeResult merge_grids(const Grid& reference, const Grid& candidate, const Transform& transform,
                        MergePolicy policy);

/// The candidate re-georeferenced into the reference frame via `transform`
/// (values untouched). This is the "registered" grid the error metrics
/// compare against the reference.
Grid apply_transform(const Grid& reference, const Grid& candidate, const Transform& transform);

} // namespace demreg
