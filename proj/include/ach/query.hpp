#pragma once

#include <optional>
#include <vector>

#include "ach/search_graph.hpp"

namespace ach {

// Heuristic stall predicate: node u (tentative d_current) is stalled when
// some already-reached v (tentative d_candidate) plus the opposite-flag
// edge into u, inflated by (1 + eps), still undercuts u. eps = 0 is the
// exact rule. Strict comparison.
inline bool stall_test(Weight d_candidate, Weight edge_c, Weight d_current,
                       double eps) {
    return d_candidate + (1.0 + eps) * edge_c < d_current;
}

struct QueryResult {
    Weight distance = kInfinity;
    std::optional<NodeId> meeting;
    // Hierarchy edges of the found path, forward orientation s -> t.
    // Empty when unreachable or s == t.
    std::vector<DualWeightEdge> packed_path;

    // Work counters, informational only.
    std::size_t settled = 0;
    std::size_t arcs_scanned = 0;
    std::size_t arcs_relaxed = 0;
    std::size_t stalls = 0;

    bool reachable() const { return meeting.has_value(); }
};

// Per-query state, reusable across sequential queries on one search graph;
// arrays reset in O(touched) via generation stamps.
class QueryContext {
public:
    void prepare(std::size_t node_count);

    struct Side {
        std::vector<Weight> dist;
        std::vector<NodeId> parent_node;
        std::vector<Weight> parent_c;
        std::vector<NodeId> parent_middle;
        std::vector<bool> stalled;
        std::vector<Weight> stall_dist;
        std::vector<std::uint32_t> stamp;
        std::vector<std::pair<Weight, NodeId>> heap;

        Weight get(NodeId u, std::uint32_t generation) const {
            return stamp[u] == generation ? dist[u] : kInfinity;
        }
    };

    Side up;
    Side down;
    std::uint32_t generation = 0;
};

// Plain bidirectional interleaved query over the search graph: forward
// relaxes up arcs, backward relaxes down arcs, candidate distance updates
// at every settle, abort once both queue minima exceed it.
QueryResult query_basic(const SearchGraph& sg, QueryContext& ctx, NodeId s, NodeId t);
QueryResult query_basic(const SearchGraph& sg, NodeId s, NodeId t);

// query_basic plus stall-on-demand: a settled stalled node is skipped, and
// while relaxing u an opposite-flag arc satisfying stall_test(.., eps)
// stalls u and stops its relaxation. Pass the epsilon the hierarchy was
// preprocessed with; eps = 0 on an exact hierarchy gives exact stalling.
QueryResult query_stalling(const SearchGraph& sg, QueryContext& ctx, NodeId s,
                           NodeId t, double eps);
QueryResult query_stalling(const SearchGraph& sg, NodeId s, NodeId t, double eps);

// Original-graph node sequence for a finite-distance result; its edge
// weights sum to the reported distance. The meeting node alone when s == t.
std::vector<NodeId> retrieve_path(const QueryResult& result, const PathUnpacker& unpacker);
std::vector<NodeId> retrieve_path(const QueryResult& result, const Hierarchy& h);

}  // namespace ach
