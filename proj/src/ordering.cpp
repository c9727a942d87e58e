#include "ach/ordering.hpp"

#include <algorithm>
#include <queue>

namespace ach {

bool NodeOrder::is_permutation() const {
    std::vector<bool> seen(rank.size(), false);
    for (std::uint32_t r : rank) {
        if (r >= rank.size() || seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

int simulate_contraction(const ContractionGraph& g, NodeId u, double eps,
                         const WitnessLimits& limits, SearchScratch& scratch) {
    g.check_node(u);
    int shortcuts = 0;
    std::vector<std::pair<NodeId, Weight>> target_budgets;
    for (const DualWeightEdge& in : g.in_edges(u)) {
        NodeId v = in.tail;
        target_budgets.clear();
        for (const DualWeightEdge& out : g.out_edges(u)) {
            if (out.head == v) continue;
            target_budgets.emplace_back(out.head,
                                        (1.0 + eps) * (in.c_tilde + out.c_tilde));
        }
        if (target_budgets.empty()) continue;
        auto witnesses = witness_search(g, v, target_budgets, u, limits, scratch);
        shortcuts += static_cast<int>(target_budgets.size() - witnesses.size());
    }
    return shortcuts;
}

int simulate_contraction(const ContractionGraph& g, NodeId u, double eps,
                         const WitnessLimits& limits) {
    SearchScratch scratch;
    return simulate_contraction(g, u, eps, limits, scratch);
}

namespace detail {

NodeOrder greedy_order(ContractionGraph& g, double eps, const WitnessLimits& limits,
                       const std::function<void(NodeId)>& before_contract) {
    const std::size_t n = g.node_count();
    NodeOrder order;
    order.rank.assign(n, 0);

    SearchScratch scratch;
    std::vector<int> contracted_neighbors(n, 0);
    auto priority = [&](NodeId u) {
        int degree = static_cast<int>(g.in_edges(u).size() + g.out_edges(u).size());
        NodePriority p;
        p.edge_difference = simulate_contraction(g, u, eps, limits, scratch) - degree;
        p.contracted_neighbors = contracted_neighbors[u];
        return p.composite();
    };

    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    for (NodeId u = 0; u < n; ++u) queue.emplace(priority(u), u);

    std::vector<NodeId> neighbors;
    std::uint32_t next_rank = 0;
    while (!queue.empty()) {
        NodeId u = queue.top().second;
        queue.pop();
        if (!g.is_alive(u)) continue;  // stale entry for a contracted node

        // Lazy update: re-insert unless still at the front.
        double fresh = priority(u);
        if (!queue.empty() && Entry(fresh, u) > queue.top()) {
            queue.emplace(fresh, u);
            continue;
        }

        neighbors.clear();
        for (const DualWeightEdge& e : g.in_edges(u)) neighbors.push_back(e.tail);
        for (const DualWeightEdge& e : g.out_edges(u)) neighbors.push_back(e.head);

        order.rank[u] = next_rank++;
        if (before_contract) before_contract(u);
        contract_node(g, u, eps, limits, scratch);

        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
        for (NodeId v : neighbors) ++contracted_neighbors[v];
    }
    return order;
}

}  // namespace detail

NodeOrder compute_order(ContractionGraph g, double eps, const WitnessLimits& limits) {
    return detail::greedy_order(g, eps, limits, nullptr);
}

}  // namespace ach
