#pragma once

#include <cstdint>

#include "ach/hierarchy.hpp"
#include "ach/query.hpp"

namespace ach {

// Outcome of checking query distances against the exact oracle over a
// random pair corpus. A correct build has zero violations. The work
// counters are informational (stalling trades relaxations for stall
// checks; the guarantee bounds distances, not work).
struct ErrorStats {
    std::size_t pairs = 0;
    std::size_t reachable = 0;
    double max_ratio = 0;
    double mean_ratio = 0;
    std::size_t violations = 0;
    std::size_t settled = 0;
    std::size_t arcs_relaxed = 0;
};

// Exact shortest distance on the original (pre-contraction) graph.
// Deliberately a standalone Dijkstra sharing no code with the hierarchy
// query path.
Weight dijkstra_oracle(const ContractionGraph& g, NodeId s, NodeId t);

// Samples n_pairs uniform (s, t) pairs and compares both sides. A
// violation is a ratio outside [1 - kRelTol, (1+eps) * (1 + kRelTol)];
// a reachability disagreement throws, since shortcuts can neither create
// nor destroy connectivity.
ErrorStats verify_pairs(const ContractionGraph& g, const Hierarchy& h,
                        std::size_t n_pairs, std::uint64_t seed, bool use_stalling);

// Small fixed instance on which the exact stall rule fires on a node that
// the (1+eps)-relaxed rule must leave alone: during contraction of u the
// two-edge path through it is witnessed by a slightly longer detour, so an
// exact stall at u would prune the only cheap route the query can take.
struct StallDivergenceInstance {
    ContractionGraph graph;
    NodeOrder order;  // forced contraction order, u lowest-ranked of its neighborhood
    NodeId s = 0, x = 1, y = 2, u = 3, v = 4, z = 5;
    double eps = 0;

    // Forward tentative distances the query reaches x and u with.
    Weight dist_x() const { return 1.0; }
    Weight dist_u() const { return 2.0 + eps / 2.0; }
};

StallDivergenceInstance build_stall_divergence_graph(double eps);

}  // namespace ach
