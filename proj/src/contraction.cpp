#include "ach/contraction.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ach {

void SearchScratch::prepare(std::size_t node_count) {
    if (dist_.size() < node_count) {
        dist_.resize(node_count);
        parent_.resize(node_count);
        hops_.resize(node_count);
        stamp_.resize(node_count, 0);
    }
    ++generation_;
    if (generation_ == 0) {  // stamp wrap-around
        std::fill(stamp_.begin(), stamp_.end(), 0);
        generation_ = 1;
    }
    heap.clear();
}

void SearchScratch::set(NodeId u, Weight d, NodeId parent, std::uint32_t hops) {
    dist_[u] = d;
    parent_[u] = parent;
    hops_[u] = hops;
    stamp_[u] = generation_;
}

namespace {

struct HeapMin {
    bool operator()(const std::pair<Weight, NodeId>& a,
                    const std::pair<Weight, NodeId>& b) const {
        return a > b;  // min-heap
    }
};

WitnessPath collect_path(const ContractionGraph& g, const SearchScratch& scratch,
                         NodeId source, NodeId target) {
    WitnessPath path;
    path.cost = scratch.dist(target);
    for (NodeId v = target; v != kNoNode; v = scratch.parent(v))
        path.nodes.push_back(v);
    std::reverse(path.nodes.begin(), path.nodes.end());
    assert(path.nodes.front() == source);
    (void)source;
    path.edges.reserve(path.nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        const DualWeightEdge* e = g.find_edge(path.nodes[i], path.nodes[i + 1]);
        assert(e != nullptr);
        path.edges.push_back(*e);
    }
    return path;
}

}  // namespace

std::unordered_map<NodeId, WitnessPath> witness_search(
    const ContractionGraph& g, NodeId source,
    const std::vector<std::pair<NodeId, Weight>>& target_budgets,
    NodeId excluded, const WitnessLimits& limits, SearchScratch& scratch) {
    std::unordered_map<NodeId, WitnessPath> found;
    if (target_budgets.empty()) return found;

    scratch.prepare(g.node_count());
    std::unordered_map<NodeId, Weight> pending(target_budgets.begin(),
                                               target_budgets.end());
    auto max_pending_budget = [&pending]() {
        Weight b = -kInfinity;
        for (const auto& [node, budget] : pending) b = std::max(b, budget);
        return b;
    };
    Weight budget_cap = max_pending_budget();

    auto& heap = scratch.heap;
    scratch.set(source, 0, kNoNode, 0);
    heap.emplace_back(0, source);
    std::uint32_t settled = 0;

    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), HeapMin{});
        auto [key, u] = heap.back();
        heap.pop_back();
        if (key > scratch.dist(u)) continue;  // stale entry
        if (key > budget_cap) break;          // every pending budget exceeded

        if (auto it = pending.find(u); it != pending.end()) {
            if (key <= it->second) found.emplace(u, collect_path(g, scratch, source, u));
            pending.erase(it);
            if (pending.empty()) break;
            budget_cap = max_pending_budget();
        }

        if (++settled >= limits.max_settled) break;
        if (scratch.hops(u) >= limits.max_hops) continue;

        std::uint32_t next_hops = scratch.hops(u) + 1;
        for (const DualWeightEdge& e : g.out_edges(u)) {
            if (e.head == excluded) continue;
            Weight cand = scratch.dist(u) + e.c;
            if (cand < scratch.dist(e.head)) {
                scratch.set(e.head, cand, u, next_hops);
                heap.emplace_back(cand, e.head);
                std::push_heap(heap.begin(), heap.end(), HeapMin{});
            }
        }
    }
    return found;
}

std::unordered_map<NodeId, WitnessPath> witness_search(
    const ContractionGraph& g, NodeId source,
    const std::vector<std::pair<NodeId, Weight>>& target_budgets,
    NodeId excluded, const WitnessLimits& limits) {
    SearchScratch scratch;
    return witness_search(g, source, target_budgets, excluded, limits, scratch);
}

void apply_witness_memory(ContractionGraph& g, const WitnessPath& path, double gamma) {
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        const DualWeightEdge* e = g.find_edge(path.nodes[i], path.nodes[i + 1]);
        if (e == nullptr)
            throw std::invalid_argument("apply_witness_memory: path edge missing");
        g.tighten_c_tilde(e->tail, e->head, e->c / (1.0 + gamma));
    }
}

std::vector<DualWeightEdge> contract_node(ContractionGraph& g, NodeId u, double eps,
                                          const WitnessLimits& limits,
                                          SearchScratch& scratch) {
    g.check_node(u);
    if (!g.is_alive(u))
        throw std::invalid_argument("contract_node: node " + std::to_string(u) +
                                    " already contracted");

    // Snapshots: adjacency of u cannot change below (shortcuts never touch
    // u), but sorted copies pin the deterministic (v, w) processing order.
    std::vector<DualWeightEdge> in_edges(g.in_edges(u));
    std::vector<DualWeightEdge> out_edges(g.out_edges(u));
    auto by_tail = [](const DualWeightEdge& a, const DualWeightEdge& b) {
        return a.tail < b.tail;
    };
    auto by_head = [](const DualWeightEdge& a, const DualWeightEdge& b) {
        return a.head < b.head;
    };
    std::sort(in_edges.begin(), in_edges.end(), by_tail);
    std::sort(out_edges.begin(), out_edges.end(), by_head);

    std::vector<DualWeightEdge> shortcuts;
    std::vector<std::pair<NodeId, Weight>> target_budgets;
    for (const DualWeightEdge& in : in_edges) {
        NodeId v = in.tail;
        target_budgets.clear();
        for (const DualWeightEdge& out : out_edges) {
            if (out.head == v) continue;  // a (v, v) shortcut is a useless self-loop
            target_budgets.emplace_back(out.head,
                                        (1.0 + eps) * (in.c_tilde + out.c_tilde));
        }
        if (target_budgets.empty()) continue;

        auto witnesses = witness_search(g, v, target_budgets, u, limits, scratch);
        for (const DualWeightEdge& out : out_edges) {
            NodeId w = out.head;
            if (w == v) continue;
            auto it = witnesses.find(w);
            if (it == witnesses.end()) {
                DualWeightEdge shortcut(v, w, in.c + out.c, in.c_tilde + out.c_tilde, u);
                g.add_or_merge_edge(shortcut);
                shortcuts.push_back(shortcut);
            } else {
                Weight tilde_sum = in.c_tilde + out.c_tilde;
                double gamma =
                    tilde_sum > 0 ? it->second.cost / tilde_sum - 1.0 : 0.0;
                assert(gamma <= eps * (1.0 + kRelTol) + 1e-12);
                apply_witness_memory(g, it->second, gamma);
            }
        }
    }

    g.remove_node(u);
    return shortcuts;
}

std::vector<DualWeightEdge> contract_node(ContractionGraph& g, NodeId u, double eps,
                                          const WitnessLimits& limits) {
    SearchScratch scratch;
    return contract_node(g, u, eps, limits, scratch);
}

}  // namespace ach
