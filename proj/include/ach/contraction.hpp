#pragma once

#include <unordered_map>
#include <vector>

#include "ach/graph.hpp"

namespace ach {

// Caps on each local witness search. Exceeding a limit counts as "no
// witness found", which only adds a redundant shortcut and never affects
// the distance guarantee.
struct WitnessLimits {
    std::uint32_t max_settled = 500;
    std::uint32_t max_hops = 16;
};

// A path that proves a shortcut unnecessary. Nodes chain tail-to-head and
// cost is the sum of the member edges' c values; the node under
// contraction never appears on it.
struct WitnessPath {
    std::vector<NodeId> nodes;
    std::vector<DualWeightEdge> edges;
    Weight cost = 0;
};

// Reusable scratch for witness searches so repeated searches cost
// O(touched) instead of O(n).
class SearchScratch {
public:
    void prepare(std::size_t node_count);

    Weight dist(NodeId u) const { return stamp_[u] == generation_ ? dist_[u] : kInfinity; }
    NodeId parent(NodeId u) const { return stamp_[u] == generation_ ? parent_[u] : kNoNode; }
    std::uint32_t hops(NodeId u) const { return stamp_[u] == generation_ ? hops_[u] : 0; }
    void set(NodeId u, Weight d, NodeId parent, std::uint32_t hops);

    std::vector<std::pair<Weight, NodeId>> heap;

private:
    std::vector<Weight> dist_;
    std::vector<NodeId> parent_;
    std::vector<std::uint32_t> hops_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
};

// One-to-many witness search: a forward best-first search from source over
// alive nodes that never expands `excluded`. A target receives a path as
// soon as it settles within its budget; targets that settle over budget or
// are cut off by the limits stay absent. Absence means "no witness".
std::unordered_map<NodeId, WitnessPath> witness_search(
    const ContractionGraph& g, NodeId source,
    const std::vector<std::pair<NodeId, Weight>>& target_budgets,
    NodeId excluded, const WitnessLimits& limits, SearchScratch& scratch);

std::unordered_map<NodeId, WitnessPath> witness_search(
    const ContractionGraph& g, NodeId source,
    const std::vector<std::pair<NodeId, Weight>>& target_budgets,
    NodeId excluded, const WitnessLimits& limits);

// Lowers c_tilde(x, y) to min(c_tilde(x, y), c(x, y) / (1 + gamma)) for
// every edge (x, y) on the witness path, so the path's c_tilde sum stays
// at or below the witnessed pair's own c_tilde sum.
void apply_witness_memory(ContractionGraph& g, const WitnessPath& path, double gamma);

// Contracts u: for every in-neighbor v and out-neighbor w (v != w) either
// finds a witness within budget (1+eps) * (c_tilde(v,u) + c_tilde(u,w))
// and distributes the delta along it, or adds the shortcut (v, w). Finally
// removes u from the graph. Returns the shortcut edges submitted.
std::vector<DualWeightEdge> contract_node(ContractionGraph& g, NodeId u, double eps,
                                          const WitnessLimits& limits,
                                          SearchScratch& scratch);

std::vector<DualWeightEdge> contract_node(ContractionGraph& g, NodeId u, double eps,
                                          const WitnessLimits& limits);

}  // namespace ach
