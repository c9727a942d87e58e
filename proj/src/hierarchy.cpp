#include "ach/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ach {

std::size_t Hierarchy::shortcut_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(),
                      [](const DualWeightEdge& e) { return e.is_shortcut(); }));
}

std::size_t count_bound_violations(const Hierarchy& h) {
    std::size_t violations = 0;
    for (const DualWeightEdge& e : h.edges) {
        Weight lower = e.c / (1.0 + h.epsilon) - kRelTol * e.c;
        if (e.c_tilde < lower || e.c_tilde > e.c) ++violations;
    }
    return violations;
}

namespace {

// An edge leaves the working graph exactly once, when the first of its
// endpoints is contracted; its weights are final at that moment.
void collect_incident(const ContractionGraph& g, NodeId u,
                      std::vector<DualWeightEdge>& sink) {
    sink.insert(sink.end(), g.in_edges(u).begin(), g.in_edges(u).end());
    sink.insert(sink.end(), g.out_edges(u).begin(), g.out_edges(u).end());
}

}  // namespace

Hierarchy build_hierarchy(ContractionGraph g, double eps, const WitnessLimits& limits) {
    if (eps < 0) throw std::invalid_argument("build_hierarchy: eps must be >= 0");
    Hierarchy h;
    h.node_count = g.node_count();
    h.epsilon = eps;
    h.order = detail::greedy_order(
        g, eps, limits, [&](NodeId u) { collect_incident(g, u, h.edges); });
    return h;
}

Hierarchy build_hierarchy(ContractionGraph g, const NodeOrder& order, double eps,
                          const WitnessLimits& limits) {
    if (eps < 0) throw std::invalid_argument("build_hierarchy: eps must be >= 0");
    if (order.rank.size() != g.node_count() || !order.is_permutation())
        throw std::invalid_argument("build_hierarchy: order is not a permutation");

    Hierarchy h;
    h.node_count = g.node_count();
    h.epsilon = eps;
    h.order = order;

    std::vector<NodeId> by_rank(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) by_rank[order.rank[u]] = u;

    SearchScratch scratch;
    for (NodeId u : by_rank) {
        collect_incident(g, u, h.edges);
        contract_node(g, u, eps, limits, scratch);
    }
    return h;
}

}  // namespace ach
