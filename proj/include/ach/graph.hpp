#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace ach {

using NodeId = std::uint32_t;
using Weight = double;

constexpr NodeId kNoNode = 0xFFFFFFFFu;
constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();

// Relative tolerance used by all floating-point invariant checks.
constexpr double kRelTol = 1e-9;

// Directed edge carrying the primary weight c and the witness-memory
// weight c_tilde. For shortcuts, middle is the contracted node the edge
// bypasses; original edges have middle == kNoNode.
struct DualWeightEdge {
    NodeId tail = kNoNode;
    NodeId head = kNoNode;
    Weight c = 0;
    Weight c_tilde = 0;
    NodeId middle = kNoNode;

    DualWeightEdge() = default;
    DualWeightEdge(NodeId tail, NodeId head, Weight c, Weight c_tilde,
                   NodeId middle = kNoNode);

    bool is_shortcut() const { return middle != kNoNode; }
};

enum class EdgeChange { inserted, replaced, kept_existing };

// Mutable adjacency structure used during preprocessing. Supports node
// removal and shortcut insertion; keeps at most one edge per ordered
// (tail, head) pair and mirrors every edge in an out-list and an in-list.
class ContractionGraph {
public:
    ContractionGraph() = default;
    explicit ContractionGraph(std::size_t node_count);

    std::size_t node_count() const { return out_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t alive_count() const { return alive_count_; }

    bool is_alive(NodeId u) const { return alive_[u]; }

    const std::vector<DualWeightEdge>& out_edges(NodeId u) const { return out_[u]; }
    const std::vector<DualWeightEdge>& in_edges(NodeId u) const { return in_[u]; }

    // nullptr when no (tail, head) edge exists.
    const DualWeightEdge* find_edge(NodeId tail, NodeId head) const;

    // Inserts e or merges it into the existing (tail, head) edge by
    // pair-wise minimum of c and c_tilde; middle follows the minimum c.
    EdgeChange add_or_merge_edge(const DualWeightEdge& e);

    // Lowers c_tilde of the (tail, head) edge to min(current, value),
    // updating both adjacency copies.
    void tighten_c_tilde(NodeId tail, NodeId head, Weight value);

    // Marks u dead and removes all incident edges from neighbor lists.
    void remove_node(NodeId u);

    void check_node(NodeId u) const;

private:
    std::vector<std::vector<DualWeightEdge>> out_;
    std::vector<std::vector<DualWeightEdge>> in_;
    std::vector<bool> alive_;
    std::size_t edge_count_ = 0;
    std::size_t alive_count_ = 0;
};

// Parses the 9th DIMACS challenge shortest-path format ("c" comments,
// "p sp <n> <m>", "a <tail> <head> <weight>" with 1-based ids and
// nonnegative integer weights). Parallel arcs merge by minimum weight,
// self-loops are dropped, and every edge starts with c_tilde == c.
ContractionGraph load_dimacs(std::istream& in);
ContractionGraph load_dimacs_file(const std::string& path);

// Writes g in DIMACS format. Requires integral weights.
void emit_dimacs(const ContractionGraph& g, std::ostream& out);

// m directed edges with endpoints uniform over ordered pairs (tail != head,
// duplicates merged by minimum) and integer weights uniform in
// [weight_min, weight_max]; deterministic for a fixed seed.
ContractionGraph generate_random_graph(std::size_t n, std::size_t m,
                                       Weight weight_min, Weight weight_max,
                                       std::uint64_t seed);

}  // namespace ach
