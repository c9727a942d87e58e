#include "ach/query.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ach {

namespace {

struct HeapMin {
    bool operator()(const std::pair<Weight, NodeId>& a,
                    const std::pair<Weight, NodeId>& b) const {
        return a > b;
    }
};

using Side = QueryContext::Side;

void touch(Side& side, NodeId u, std::uint32_t generation) {
    if (side.stamp[u] == generation) return;
    side.stamp[u] = generation;
    side.dist[u] = kInfinity;
    side.parent_node[u] = kNoNode;
    side.stalled[u] = false;
    side.stall_dist[u] = kInfinity;
}

void heap_push(Side& side, Weight key, NodeId u) {
    side.heap.emplace_back(key, u);
    std::push_heap(side.heap.begin(), side.heap.end(), HeapMin{});
}

// Drop stale entries (lazy deletion) so front() is the true queue minimum.
void prune(Side& side, std::uint32_t generation) {
    while (!side.heap.empty() &&
           side.heap.front().first > side.get(side.heap.front().second, generation)) {
        std::pop_heap(side.heap.begin(), side.heap.end(), HeapMin{});
        side.heap.pop_back();
    }
}

QueryResult run_query(const SearchGraph& sg, QueryContext& ctx, NodeId s, NodeId t,
                      bool stalling, double eps) {
    sg.check_node(s);
    sg.check_node(t);
    ctx.prepare(sg.node_count());
    const std::uint32_t gen = ctx.generation;

    touch(ctx.up, s, gen);
    ctx.up.dist[s] = 0;
    heap_push(ctx.up, 0, s);
    touch(ctx.down, t, gen);
    ctx.down.dist[t] = 0;
    heap_push(ctx.down, 0, t);

    QueryResult result;
    Weight d = kInfinity;
    NodeId meeting = kNoNode;
    bool forward = true;
    Weight last_key[2] = {0, 0};

    for (;;) {
        prune(ctx.up, gen);
        prune(ctx.down, gen);
        Weight min_up = ctx.up.heap.empty() ? kInfinity : ctx.up.heap.front().first;
        Weight min_down = ctx.down.heap.empty() ? kInfinity : ctx.down.heap.front().first;
        if (ctx.up.heap.empty() && ctx.down.heap.empty()) break;
        if (!(d > std::min(min_up, min_down))) break;  // abort-on-success

        // Interleave: switch direction whenever the other queue has work.
        if ((forward ? ctx.down : ctx.up).heap.empty() == false) forward = !forward;
        Side& cur = forward ? ctx.up : ctx.down;
        Side& other = forward ? ctx.down : ctx.up;

        auto [key, u] = cur.heap.front();
        std::pop_heap(cur.heap.begin(), cur.heap.end(), HeapMin{});
        cur.heap.pop_back();
        assert(key >= last_key[forward ? 0 : 1]);  // settle keys are monotone
        last_key[forward ? 0 : 1] = key;

        ++result.settled;
        Weight via = cur.dist[u] + other.get(u, gen);
        if (via < d) {
            d = via;
            meeting = u;
        }

        if (stalling && cur.stalled[u]) continue;

        const Weight dist_u = cur.dist[u];
        for (const SearchGraph::Arc& arc : sg.group(u)) {
            ++result.arcs_scanned;
            if (forward ? arc.up : arc.down) {
                Weight cand = dist_u + arc.c;
                if (cand < cur.get(arc.other, gen)) {
                    touch(cur, arc.other, gen);
                    cur.dist[arc.other] = cand;
                    cur.parent_node[arc.other] = u;
                    cur.parent_c[arc.other] = arc.c;
                    cur.parent_middle[arc.other] = arc.middle;
                    heap_push(cur, cand, arc.other);
                    ++result.arcs_relaxed;
                    if (stalling && cur.stalled[arc.other])
                        cur.stalled[arc.other] = false;
                }
            }
            if (stalling && (forward ? arc.down : arc.up)) {
                Weight dv = cur.get(arc.other, gen);
                if (stall_test(dv, arc.c, dist_u, eps)) {
                    cur.stalled[u] = true;
                    cur.stall_dist[u] = dv + (1.0 + eps) * arc.c;
                    ++result.stalls;
                    break;  // stop relaxing the stalled node
                }
            }
        }
    }

    result.distance = d;
    if (meeting == kNoNode) return result;
    result.meeting = meeting;

    // Packed path: up-parent chain reversed, then down-parent chain.
    std::vector<DualWeightEdge> ascent;
    for (NodeId v = meeting; v != s; v = ctx.up.parent_node[v])
        ascent.emplace_back(ctx.up.parent_node[v], v, ctx.up.parent_c[v],
                            ctx.up.parent_c[v], ctx.up.parent_middle[v]);
    result.packed_path.assign(ascent.rbegin(), ascent.rend());
    for (NodeId v = meeting; v != t; v = ctx.down.parent_node[v])
        result.packed_path.emplace_back(v, ctx.down.parent_node[v], ctx.down.parent_c[v],
                                        ctx.down.parent_c[v], ctx.down.parent_middle[v]);
    return result;
}

}  // namespace

void QueryContext::prepare(std::size_t node_count) {
    for (Side* side : {&up, &down}) {
        if (side->dist.size() < node_count) {
            side->dist.resize(node_count);
            side->parent_node.resize(node_count);
            side->parent_c.resize(node_count);
            side->parent_middle.resize(node_count);
            side->stalled.resize(node_count);
            side->stall_dist.resize(node_count);
            side->stamp.resize(node_count, 0);
        }
        side->heap.clear();
    }
    ++generation;
    if (generation == 0) {
        std::fill(up.stamp.begin(), up.stamp.end(), 0);
        std::fill(down.stamp.begin(), down.stamp.end(), 0);
        generation = 1;
    }
}

QueryResult query_basic(const SearchGraph& sg, QueryContext& ctx, NodeId s, NodeId t) {
    return run_query(sg, ctx, s, t, false, 0.0);
}

QueryResult query_basic(const SearchGraph& sg, NodeId s, NodeId t) {
    QueryContext ctx;
    return run_query(sg, ctx, s, t, false, 0.0);
}

QueryResult query_stalling(const SearchGraph& sg, QueryContext& ctx, NodeId s,
                           NodeId t, double eps) {
    return run_query(sg, ctx, s, t, true, eps);
}

QueryResult query_stalling(const SearchGraph& sg, NodeId s, NodeId t, double eps) {
    QueryContext ctx;
    return run_query(sg, ctx, s, t, true, eps);
}

std::vector<NodeId> retrieve_path(const QueryResult& result, const PathUnpacker& unpacker) {
    if (!result.reachable())
        throw std::invalid_argument("retrieve_path: query found no path");
    if (result.packed_path.empty()) return {*result.meeting};
    return unpacker.unpack(result.packed_path);
}

std::vector<NodeId> retrieve_path(const QueryResult& result, const Hierarchy& h) {
    return retrieve_path(result, PathUnpacker(h));
}

}  // namespace ach
