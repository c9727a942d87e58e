#include "ach/verify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ach/search_graph.hpp"

namespace ach {

Weight dijkstra_oracle(const ContractionGraph& g, NodeId s, NodeId t) {
    g.check_node(s);
    g.check_node(t);
    if (s == t) return 0;

    std::vector<Weight> dist(g.node_count(), kInfinity);
    std::vector<std::pair<Weight, NodeId>> heap;
    auto cmp = [](const std::pair<Weight, NodeId>& a,
                  const std::pair<Weight, NodeId>& b) { return a > b; };
    dist[s] = 0;
    heap.emplace_back(0, s);
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        auto [key, node] = heap.back();
        heap.pop_back();
        if (key > dist[node]) continue;
        if (node == t) return key;
        for (const DualWeightEdge& e : g.out_edges(node)) {
            Weight cand = key + e.c;
            if (cand < dist[e.head]) {
                dist[e.head] = cand;
                heap.emplace_back(cand, e.head);
                std::push_heap(heap.begin(), heap.end(), cmp);
            }
        }
    }
    return kInfinity;
}

ErrorStats verify_pairs(const ContractionGraph& g, const Hierarchy& h,
                        std::size_t n_pairs, std::uint64_t seed, bool use_stalling) {
    if (h.node_count != g.node_count())
        throw std::invalid_argument("verify_pairs: graph/hierarchy size mismatch");

    SearchGraph sg = build_search_graph(h);
    QueryContext ctx;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, g.node_count() - 1);

    ErrorStats stats;
    stats.pairs = n_pairs;
    double ratio_sum = 0;
    const double upper = (1.0 + h.epsilon) * (1.0 + kRelTol);
    const double lower = 1.0 - kRelTol;

    for (std::size_t i = 0; i < n_pairs; ++i) {
        auto s = static_cast<NodeId>(pick(rng));
        auto t = static_cast<NodeId>(pick(rng));
        Weight exact = dijkstra_oracle(g, s, t);
        QueryResult got = use_stalling ? query_stalling(sg, ctx, s, t, h.epsilon)
                                       : query_basic(sg, ctx, s, t);

        stats.settled += got.settled;
        stats.arcs_relaxed += got.arcs_relaxed;

        bool exact_reachable = exact < kInfinity;
        if (exact_reachable != got.reachable())
            throw std::runtime_error(
                "verify_pairs: reachability mismatch for pair " + std::to_string(s) +
                "->" + std::to_string(t) + " (oracle " +
                (exact_reachable ? "reachable" : "unreachable") + ", query " +
                (got.reachable() ? "reachable" : "unreachable") + ")");
        if (!exact_reachable) continue;

        double ratio = exact > 0 ? got.distance / exact
                                 : (got.distance == 0 ? 1.0 : kInfinity);
        ++stats.reachable;
        ratio_sum += ratio;
        stats.max_ratio = std::max(stats.max_ratio, ratio);
        if (ratio > upper || ratio < lower) ++stats.violations;
    }
    if (stats.reachable > 0) stats.mean_ratio = ratio_sum / stats.reachable;
    return stats;
}

StallDivergenceInstance build_stall_divergence_graph(double eps) {
    if (!(eps > 0))
        throw std::invalid_argument("build_stall_divergence_graph: eps must be > 0");

    StallDivergenceInstance inst;
    inst.eps = eps;
    inst.graph = ContractionGraph(6);

    auto add = [&](NodeId a, NodeId b, Weight c) {
        inst.graph.add_or_merge_edge(DualWeightEdge(a, b, c, c));
    };
    // Contracting u must find the x->y->v detour within budget
    // (witness sum 2 + eps against budget (1+eps)*2), and the direct s->u
    // edge must sit strictly between the exact and the relaxed stall
    // thresholds at u. Margins of eps/2 on every inequality.
    add(inst.s, inst.x, 1.0);
    add(inst.s, inst.u, 2.0 + eps / 2.0);
    add(inst.x, inst.u, 1.0);
    add(inst.x, inst.y, 1.0);
    add(inst.y, inst.v, 1.0 + eps);
    add(inst.u, inst.v, 1.0);
    add(inst.v, inst.z, 1.0);

    inst.order.rank.assign(6, 0);
    inst.order.rank[inst.s] = 0;
    inst.order.rank[inst.u] = 1;
    inst.order.rank[inst.x] = 2;
    inst.order.rank[inst.y] = 3;
    inst.order.rank[inst.v] = 4;
    inst.order.rank[inst.z] = 5;
    return inst;
}

}  // namespace ach
