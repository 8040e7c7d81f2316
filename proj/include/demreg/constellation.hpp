#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "demreg/control_points.hpp"
#include "demreg/grid.hpp"

namespace demreg {

/// Integer cell offset aligning the candidate grid to the reference frame:
/// a candidate cell (r, c) belongs at reference-frame cell
/// (r + drow, c + dcol). `support` counts the control points that agree on
/// the offset.
struct Transform {
    int drow = 0;
    int dcol = 0;
    int support = 0;

    friend bool operator==(const Transform&, const Transform&) = default;
};

struct ParentNode {
    ControlPoint point;
    CellIndex cell; // reference-grid cell of the point
};

struct ParentEdge {
    int a = 0;
    int b = 0;
    double length = 0.0; // Euclidean distance between cell centers, map units
};

/// Complete graph over the reference control points. Edge lengths are what a
/// consistent sub-graph in the candidate must reproduce.
struct ParentGraph {
    GridHeader header; // reference georeference the distances were measured in
    std::vector<ParentNode> nodes;
    std::vector<ParentEdge> edges;
};

/// Validated assignment of parent nodes to candidate cells. All chosen pairs
/// imply one and the same integer cell offset; `max_edge_error` is the worst
/// pairwise-distance disagreement with the parent graph (zero up to rounding
/// once offsets agree exactly).
struct Correspondence {
    std::vector<std::pair<int, CandidateMatch>> pairs; // (parent node index, chosen candidate)
    Transform translation;
    double max_edge_error = 0.0;
};

/// Smallest number of agreeing control points accepted as evidence of a real
/// translation: max(3, ceil(n / 4)).
int min_support(int node_count);

/// Build the complete parent graph. Requires n >= 2 and pairwise distinct
/// cells (coincident control points carry no geometric information).
ParentGraph build_parent_graph(const GridHeader& reference,
                               const std::vector<std::pair<ControlPoint, CellIndex>>& points);

/// Select the largest geometrically consistent sub-graph among the per-node
/// candidate lists and the translation it implies.
///
/// Conceptually this is a maximum clique over association pairs
/// (node, candidate), where two pairs are compatible when they name different
/// nodes, different cells, reproduce the parent edge length within dist_tol,
/// and imply the same integer cell offset. Exact offset agreement collapses
/// the clique search into one voting pass over offsets, linear in the total
/// number of candidates. Ties break by smaller summed candidate residual,
/// then by lexicographically smallest assignment.
Correspondence find_correspondence(const ParentGraph& parent,
                                   const std::vector<std::vector<CandidateMatch>>& candidates,
                                   double dist_tol);

/// Consensus translation of a validated correspondence.
Transform estimate_transform(const Correspondence& correspondence);

} // namespace demreg
