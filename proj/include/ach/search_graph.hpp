#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ach/hierarchy.hpp"

namespace ach {

// Adjacency-array encoding of the combined search graph: every hierarchy
// edge lives in the group of its lower-ranked endpoint, flagged up when
// the original direction leads away from the owner and down when it leads
// into it. Oriented low rank -> high rank the structure is acyclic.
class SearchGraph {
public:
    struct Arc {
        NodeId other = kNoNode;
        Weight c = 0;
        bool up = false;
        bool down = false;
        NodeId middle = kNoNode;
    };

    SearchGraph() = default;
    SearchGraph(std::size_t node_count, std::vector<std::vector<Arc>> groups);

    std::size_t node_count() const { return first_.empty() ? 0 : first_.size() - 1; }
    std::size_t arc_count() const { return arcs_.size(); }

    std::span<const Arc> group(NodeId u) const {
        return {arcs_.data() + first_[u], arcs_.data() + first_[u + 1]};
    }

    void check_node(NodeId u) const;

private:
    std::vector<std::uint32_t> first_;
    std::vector<Arc> arcs_;
};

SearchGraph build_search_graph(const Hierarchy& h);

// Binary hierarchy serialization, magic "ACH1", little-endian throughout.
// load_ch validates the header, the rank permutation and the per-edge
// weight bounds before accepting a file.
void save_ch(const Hierarchy& h, std::ostream& out);
void save_ch_file(const Hierarchy& h, const std::string& path);
Hierarchy load_ch(std::istream& in);
Hierarchy load_ch_file(const std::string& path);

// Expands shortcuts recursively via their middle nodes. Built once per
// hierarchy; unpacking then costs O(output).
class PathUnpacker {
public:
    explicit PathUnpacker(const Hierarchy& h);

    // Original-graph node sequence of a chained packed path. An empty
    // packed path yields an empty sequence (callers add the lone node for
    // s == t queries).
    std::vector<NodeId> unpack(std::span<const DualWeightEdge> packed) const;

private:
    const Hierarchy* h_;
    std::unordered_map<std::uint64_t, std::uint32_t> edge_index_;

    const DualWeightEdge& edge_at(NodeId tail, NodeId head) const;
    void expand(const DualWeightEdge& e, std::vector<NodeId>& out) const;
};

std::vector<NodeId> unpack_path(const Hierarchy& h,
                                std::span<const DualWeightEdge> packed);

}  // namespace ach
