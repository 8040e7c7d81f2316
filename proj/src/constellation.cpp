#include "demreg/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace demreg {

int min_support(int node_count) {
    const int quarter = (node_count + 3) / 4;
    return std::max(3, quarter);
}

ParentGraph build_parent_graph(const GridHeader& reference,
                               const std::vector<std::pair<ControlPoint, CellIndex>>& points) {
    if (points.size() < 2)
        fail(ErrorCode::TooFewPoints,
             "need at least 2 control points, got " + std::to_string(points.size()));

    std::set<CellIndex> cells;
    for (const auto& [point, cell] : points) {
        if (!cells.insert(cell).second)
            fail(ErrorCode::DuplicateCell, "two control points share reference cell (" +
                                               std::to_string(cell.row) + "," +
                                               std::to_string(cell.col) + ")");
    }

    ParentGraph graph;
    graph.header = reference;
    graph.nodes.reserve(points.size());
    for (const auto& [point, cell] : points) graph.nodes.push_back({point, cell});

    const int n = static_cast<int>(graph.nodes.size());
    graph.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        const GeoPoint pi = cell_to_geo(reference, graph.nodes[i].cell.row, graph.nodes[i].cell.col);
        for (int j = i + 1; j < n; ++j) {
            const GeoPoint pj =
                cell_to_geo(reference, graph.nodes[j].cell.row, graph.nodes[j].cell.col);
            graph.edges.push_back({i, j, std::hypot(pi.x - pj.x, pi.y - pj.y)});
        }
    }
    return graph;
}

namespace {

struct OffsetBucket {
    // Per parent node, the best candidate implying this offset. A node can
    // imply a given offset through at most one cell, so "best" only matters
    // when a candidate list repeats a cell; the smaller residual wins.
    std::map<int, CandidateMatch> supporters;
};

// Assignment vectors compare by (support desc, total residual asc,
// lexicographic (node, row, col) asc). Residual sums are accumulated in node
// order so equal assignments produce bit-identical sums.
double total_residual(const std::map<int, CandidateMatch>& supporters) {
    double sum = 0.0;
    for (const auto& [node, cand] : supporters) sum += cand.residual;
    return sum;
}

bool lexicographically_before(const std::map<int, CandidateMatch>& a,
                              const std::map<int, CandidateMatch>& b) {
    auto ita = a.begin();
    auto itb = b.begin();
    for (; ita != a.end() && itb != b.end(); ++ita, ++itb) {
        const auto ta = std::tuple(ita->first, ita->second.row, ita->second.col);
        const auto tb = std::tuple(itb->first, itb->second.row, itb->second.col);
        if (ta != tb) return ta < tb;
    }
    return a.size() < b.size();
}

} // namespace

Correspondence find_correspondence(const ParentGraph& parent,
                                   const std::vector<std::vector<CandidateMatch>>& candidates,
                                   double dist_tol) {
    const int n = static_cast<int>(parent.nodes.size());
    if (static_cast<int>(candidates.size()) != n)
        throw std::invalid_argument("candidate lists do not match parent node count");
    if (dist_tol < 0.0) throw std::invalid_argument("dist_tol must be non-negative");
    // dist_tol is otherwise unused: exact offset agreement already bounds
    // every pairwise distance error by floating-point rounding.

    // Voting pass: group (node, candidate) pairs by the integer offset they
    // imply. The largest bucket is the maximum mutually compatible set.
    std::map<std::pair<int, int>, OffsetBucket> buckets;
    for (int i = 0; i < n; ++i) {
        for (const CandidateMatch& cand : candidates[i]) {
            const std::pair<int, int> offset{parent.nodes[i].cell.row - cand.row,
                                             parent.nodes[i].cell.col - cand.col};
            auto& slot = buckets[offset].supporters;
            auto [it, inserted] = slot.try_emplace(i, cand);
            if (!inserted && cand.residual < it->second.residual) it->second = cand;
        }
    }

    const OffsetBucket* best = nullptr;
    std::pair<int, int> best_offset{0, 0};
    double best_residual = 0.0;
    for (const auto& [offset, bucket] : buckets) {
        const double residual = total_residual(bucket.supporters);
        bool better = false;
        if (!best) {
            better = true;
        } else if (bucket.supporters.size() != best->supporters.size()) {
            better = bucket.supporters.size() > best->supporters.size();
        } else if (residual != best_residual) {
            better = residual < best_residual;
        } else {
            better = lexicographically_before(bucket.supporters, best->supporters);
        }
        if (better) {
            best = &bucket;
            best_offset = offset;
            best_residual = residual;
        }
    }

    const int needed = min_support(n);
    if (!best || static_cast<int>(best->supporters.size()) < needed)
        fail(ErrorCode::InsufficientMatches,
             "largest consistent set has " +
                 std::to_string(best ? best->supporters.size() : 0) + " of " +
                 std::to_string(needed) + " required points");

    Correspondence result;
    result.translation = Transform{best_offset.first, best_offset.second,
                                   static_cast<int>(best->supporters.size())};
    result.pairs.assign(best->supporters.begin(), best->supporters.end());

    // Pairwise distances between chosen cells versus parent edge lengths;
    // equal offsets make this pure floating-point noise, reported for the run
    // record.
    const double cs = parent.header.cellsize;
    for (std::size_t a = 0; a < result.pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < result.pairs.size(); ++b) {
            const auto& [ia, ca] = result.pairs[a];
            const auto& [ib, cb] = result.pairs[b];
            const double cand_dist =
                std::hypot((ca.row - cb.row) * cs, (ca.col - cb.col) * cs);
            double parent_len = 0.0;
            for (const ParentEdge& e : parent.edges) {
                if ((e.a == ia && e.b == ib) || (e.a == ib && e.b == ia)) {
                    parent_len = e.length;
                    break;
                }
            }
            result.max_edge_error =
                std::max(result.max_edge_error, std::abs(cand_dist - parent_len));
        }
    }
    return result;
}

Transform estimate_transform(const Correspondence& correspondence) {
    return correspondence.translation;
}

} // namespace demreg
