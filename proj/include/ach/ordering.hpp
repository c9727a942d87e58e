#pragma once

#include <functional>
#include <vector>

#include "ach/contraction.hpp"
#include "ach/graph.hpp"

namespace ach {

// Position of each node in the contraction order; rank 0 is contracted
// first. Always a permutation of 0..n-1.
struct NodeOrder {
    std::vector<std::uint32_t> rank;

    std::size_t size() const { return rank.size(); }
    bool is_permutation() const;
};

struct NodePriority {
    int edge_difference = 0;
    int contracted_neighbors = 0;

    double composite() const {
        return static_cast<double>(edge_difference + contracted_neighbors);
    }
};

// Number of (v, w) neighbor pairs whose witness test would fail, i.e. the
// shortcuts contracting u would add right now. No mutation, no
// witness-memory updates.
int simulate_contraction(const ContractionGraph& g, NodeId u, double eps,
                         const WitnessLimits& limits, SearchScratch& scratch);

int simulate_contraction(const ContractionGraph& g, NodeId u, double eps,
                         const WitnessLimits& limits);

// Greedy order: repeatedly contract the node minimizing
// edge_difference + contracted_neighbors, with lazy priority
// re-evaluation on pop and ties broken by smaller id. Evaluating
// priorities online contracts g down to the empty graph.
NodeOrder compute_order(ContractionGraph g, double eps, const WitnessLimits& limits);

namespace detail {

// Shared greedy driver, mutating g in place. before_contract(u) fires
// while u's adjacency is still intact, immediately before contraction.
NodeOrder greedy_order(ContractionGraph& g, double eps, const WitnessLimits& limits,
                       const std::function<void(NodeId)>& before_contract);

}  // namespace detail

}  // namespace ach
