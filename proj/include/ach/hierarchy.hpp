#pragma once

#include <cstddef>
#include <vector>

#include "ach/graph.hpp"
#include "ach/ordering.hpp"

namespace ach {

// Frozen output of preprocessing: contraction order plus every edge that
// was ever part of the working graph (originals and shortcuts), each with
// its final c, c_tilde and middle node. Queries never read c_tilde; it is
// kept for auditing.
struct Hierarchy {
    std::size_t node_count = 0;
    NodeOrder order;
    std::vector<DualWeightEdge> edges;
    double epsilon = 0;

    std::size_t shortcut_count() const;
    std::size_t original_edge_count() const { return edges.size() - shortcut_count(); }
};

// Edges violating c / (1 + eps) - kRelTol * c <= c_tilde <= c.
std::size_t count_bound_violations(const Hierarchy& h);

// Contracts every node using the greedy priority order.
Hierarchy build_hierarchy(ContractionGraph g, double eps, const WitnessLimits& limits);

// Contracts in the given order instead; the guarantee holds for any
// permutation, only shortcut counts differ.
Hierarchy build_hierarchy(ContractionGraph g, const NodeOrder& order, double eps,
                          const WitnessLimits& limits);

}  // namespace ach
