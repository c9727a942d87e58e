#include "ach/search_graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ach {

SearchGraph::SearchGraph(std::size_t node_count, std::vector<std::vector<Arc>> groups) {
    first_.assign(node_count + 1, 0);
    for (std::size_t u = 0; u < node_count; ++u)
        first_[u + 1] = first_[u] + static_cast<std::uint32_t>(groups[u].size());
    arcs_.reserve(first_[node_count]);
    for (auto& group : groups)
        arcs_.insert(arcs_.end(), group.begin(), group.end());
}

void SearchGraph::check_node(NodeId u) const {
    if (u >= node_count())
        throw std::out_of_range("node id " + std::to_string(u) + " out of range");
}

SearchGraph build_search_graph(const Hierarchy& h) {
    const auto& rank = h.order.rank;
    std::vector<std::vector<SearchGraph::Arc>> groups(h.node_count);

    for (const DualWeightEdge& e : h.edges) {
        if (rank[e.tail] == rank[e.head])
            throw std::runtime_error("build_search_graph: equal ranks on edge " +
                                     std::to_string(e.tail) + "->" +
                                     std::to_string(e.head) + " (order corrupt)");
        bool ascending = rank[e.tail] < rank[e.head];
        NodeId owner = ascending ? e.tail : e.head;
        NodeId other = ascending ? e.head : e.tail;

        // Opposite equal-weight twin with the same middle folds into one
        // record carrying both flags; anything else keeps its own record.
        SearchGraph::Arc* twin = nullptr;
        for (auto& arc : groups[owner])
            if (arc.other == other && arc.c == e.c && arc.middle == e.middle &&
                (ascending ? !arc.up : !arc.down))
                twin = &arc;
        if (twin != nullptr) {
            (ascending ? twin->up : twin->down) = true;
        } else {
            SearchGraph::Arc arc;
            arc.other = other;
            arc.c = e.c;
            arc.middle = e.middle;
            (ascending ? arc.up : arc.down) = true;
            groups[owner].push_back(arc);
        }
    }
    return SearchGraph(h.node_count, std::move(groups));
}

namespace {

constexpr std::array<char, 4> kMagic = {'A', 'C', 'H', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_le(std::ostream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes;
    in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
    if (!in) throw std::runtime_error("hierarchy file truncated");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

[[noreturn]] void format_fail(const std::string& what) {
    throw std::runtime_error("hierarchy file invalid: " + what);
}

}  // namespace

void save_ch(const Hierarchy& h, std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    write_le<std::uint32_t>(out, kVersion);
    write_le<std::uint64_t>(out, h.node_count);
    write_le<double>(out, h.epsilon);
    for (std::uint32_t r : h.order.rank) write_le<std::uint32_t>(out, r);
    write_le<std::uint64_t>(out, h.edges.size());
    for (const DualWeightEdge& e : h.edges) {
        write_le<std::uint32_t>(out, e.tail);
        write_le<std::uint32_t>(out, e.head);
        write_le<double>(out, e.c);
        write_le<double>(out, e.c_tilde);
        write_le<std::uint32_t>(out, e.middle);
    }
    if (!out) throw std::runtime_error("hierarchy write failed");
}

void save_ch_file(const Hierarchy& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    save_ch(h, out);
}

Hierarchy load_ch(std::istream& in) {
    std::array<char, 4> magic;
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) format_fail("bad magic");
    if (read_le<std::uint32_t>(in) != kVersion) format_fail("unsupported version");

    Hierarchy h;
    h.node_count = read_le<std::uint64_t>(in);
    h.epsilon = read_le<double>(in);
    if (!(h.epsilon >= 0) || h.epsilon > 1e12) format_fail("epsilon out of range");

    h.order.rank.resize(h.node_count);
    for (auto& r : h.order.rank) r = read_le<std::uint32_t>(in);
    if (!h.order.is_permutation()) format_fail("rank array is not a permutation");

    auto edge_count = read_le<std::uint64_t>(in);
    h.edges.reserve(edge_count);
    for (std::uint64_t i = 0; i < edge_count; ++i) {
        auto tail = read_le<std::uint32_t>(in);
        auto head = read_le<std::uint32_t>(in);
        auto c = read_le<double>(in);
        auto c_tilde = read_le<double>(in);
        auto middle = read_le<std::uint32_t>(in);
        if (tail >= h.node_count || head >= h.node_count)
            format_fail("edge endpoint out of range");
        if (tail == head) format_fail("self-loop edge");
        if (middle != kNoNode && middle >= h.node_count)
            format_fail("middle node out of range");
        if (!std::isfinite(c) || !std::isfinite(c_tilde) || c < 0 || c_tilde < 0)
            format_fail("non-finite or negative edge weight");
        if (c_tilde > c) format_fail("c_tilde exceeds c");
        if (c_tilde < c / (1.0 + h.epsilon) - kRelTol * c)
            format_fail("c_tilde below the epsilon bound");
        h.edges.emplace_back(tail, head, c, c_tilde, middle);
    }
    return h;
}

Hierarchy load_ch_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_ch(in);
}

namespace {

std::uint64_t pair_key(NodeId tail, NodeId head) {
    return (static_cast<std::uint64_t>(tail) << 32) | head;
}

}  // namespace

PathUnpacker::PathUnpacker(const Hierarchy& h) : h_(&h) {
    edge_index_.reserve(h.edges.size());
    for (std::uint32_t i = 0; i < h.edges.size(); ++i)
        edge_index_.emplace(pair_key(h.edges[i].tail, h.edges[i].head), i);
}

const DualWeightEdge& PathUnpacker::edge_at(NodeId tail, NodeId head) const {
    auto it = edge_index_.find(pair_key(tail, head));
    if (it == edge_index_.end())
        throw std::runtime_error("unpack: missing component edge " +
                                 std::to_string(tail) + "->" + std::to_string(head) +
                                 " (hierarchy corrupt)");
    return h_->edges[it->second];
}

void PathUnpacker::expand(const DualWeightEdge& e, std::vector<NodeId>& out) const {
    if (!e.is_shortcut()) {
        out.push_back(e.head);
        return;
    }
    expand(edge_at(e.tail, e.middle), out);
    expand(edge_at(e.middle, e.head), out);
}

std::vector<NodeId> PathUnpacker::unpack(std::span<const DualWeightEdge> packed) const {
    std::vector<NodeId> nodes;
    if (packed.empty()) return nodes;
    nodes.push_back(packed.front().tail);
    for (std::size_t i = 0; i < packed.size(); ++i) {
        if (i > 0 && packed[i].tail != packed[i - 1].head)
            throw std::invalid_argument("unpack: packed edges do not chain");
        expand(packed[i], nodes);
    }
    return nodes;
}

std::vector<NodeId> unpack_path(const Hierarchy& h,
                                std::span<const DualWeightEdge> packed) {
    return PathUnpacker(h).unpack(packed);
}

}  // namespace ach
