#include <doctest.h>

#include <stdexcept>

#include "ach/contraction.hpp"
#include "ach/hierarchy.hpp"
#include "test_support.hpp"

using namespace ach;
using testing::close;
using testing::make_graph;

namespace {

// Diamond: v -> u -> w with unit edges, and a detour v -> x -> w of cost
// 2.1. The canonical witness-memory fixture.
ContractionGraph diamond() {
    return make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 3, 1.1}, {3, 2, 1.0}});
}
constexpr NodeId kV = 0, kU = 1, kW = 2, kX = 3;

}  // namespace

TEST_CASE("witness_search finds the detour within budget") {
    ContractionGraph g = diamond();
    auto found = witness_search(g, kV, {{kW, 2.2}}, kU, WitnessLimits{});
    REQUIRE(found.count(kW) == 1);
    const WitnessPath& p = found.at(kW);
    CHECK(p.nodes == std::vector<NodeId>{kV, kX, kW});
    CHECK(close(p.cost, 2.1));
    REQUIRE(p.edges.size() == 2);
    CHECK(close(p.edges[0].c + p.edges[1].c, p.cost));
}

TEST_CASE("witness_search respects the budget strictly") {
    ContractionGraph g = diamond();
    auto found = witness_search(g, kV, {{kW, 2.0}}, kU, WitnessLimits{});
    CHECK(found.empty());  // 2.1 > 2.0
}

TEST_CASE("witness_search finds nothing when every path runs through the excluded node") {
    ContractionGraph g = make_graph(3, {{0, 1, 1}, {1, 2, 1}});
    auto found = witness_search(g, 0, {{2, 100.0}}, 1, WitnessLimits{});
    CHECK(found.empty());
}

TEST_CASE("witness_search honors settle and hop limits") {
    // Long cheap detour 0 -> 2 -> 3 -> 4 -> 5 next to expensive 0 -> 1 -> 5.
    ContractionGraph g = make_graph(
        6, {{0, 1, 10}, {1, 5, 10}, {0, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}});
    WitnessLimits roomy;
    CHECK(witness_search(g, 0, {{5, 20.0}}, 1, roomy).count(5) == 1);

    WitnessLimits short_hops{.max_settled = 500, .max_hops = 2};
    CHECK(witness_search(g, 0, {{5, 20.0}}, 1, short_hops).empty());

    WitnessLimits one_settle{.max_settled = 1, .max_hops = 16};
    CHECK(witness_search(g, 0, {{5, 20.0}}, 1, one_settle).empty());
}

TEST_CASE("apply_witness_memory distributes the delta") {
    SUBCASE("positive gamma lowers c_tilde proportionally") {
        ContractionGraph g = make_graph(2, {{0, 1, 1.1}});
        WitnessPath p{.nodes = {0, 1}, .edges = {*g.find_edge(0, 1)}, .cost = 1.1};
        apply_witness_memory(g, p, 0.05);
        CHECK(close(g.find_edge(0, 1)->c_tilde, 1.1 / 1.05));
        CHECK(close(g.in_edges(1)[0].c_tilde, 1.1 / 1.05));  // mirror updated too
    }
    SUBCASE("negative gamma is a no-op") {
        ContractionGraph g = make_graph(2, {{0, 1, 1.1}});
        WitnessPath p{.nodes = {0, 1}, .edges = {*g.find_edge(0, 1)}, .cost = 1.1};
        apply_witness_memory(g, p, -0.02);
        CHECK(g.find_edge(0, 1)->c_tilde == 1.1);
    }
    SUBCASE("an already lower c_tilde is kept") {
        ContractionGraph g(2);
        g.add_or_merge_edge(DualWeightEdge(0, 1, 1.05, 0.9));
        WitnessPath p{.nodes = {0, 1}, .edges = {*g.find_edge(0, 1)}, .cost = 1.05};
        apply_witness_memory(g, p, 0.05);  // 1.05 / 1.05 = 1.0 > 0.9
        CHECK(g.find_edge(0, 1)->c_tilde == 0.9);
    }
}

TEST_CASE("contract_node adds a shortcut when no detour exists") {
    ContractionGraph g = make_graph(3, {{0, 1, 1}, {1, 2, 1}});
    auto shortcuts = contract_node(g, 1, 0.25, WitnessLimits{});
    REQUIRE(shortcuts.size() == 1);
    CHECK(shortcuts[0].tail == 0);
    CHECK(shortcuts[0].head == 2);
    CHECK(shortcuts[0].c == 2);
    CHECK(shortcuts[0].c_tilde == 2);
    CHECK(shortcuts[0].middle == 1);
    REQUIRE(g.find_edge(0, 2) != nullptr);
    CHECK_FALSE(g.is_alive(1));
}

TEST_CASE("contract_node accepts an in-budget detour and updates witness memory") {
    ContractionGraph g = diamond();
    auto shortcuts = contract_node(g, kU, 0.1, WitnessLimits{});
    CHECK(shortcuts.empty());
    // gamma = 2.1 / 2.0 - 1 = 0.05
    CHECK(close(g.find_edge(kV, kX)->c_tilde, 1.0476190476190477));
    CHECK(close(g.find_edge(kX, kW)->c_tilde, 0.9523809523809523));
    CHECK(g.find_edge(kV, kX)->c == 1.1);  // c itself untouched
}

TEST_CASE("contract_node in exact mode rejects the longer detour") {
    ContractionGraph g = diamond();
    auto shortcuts = contract_node(g, kU, 0.0, WitnessLimits{});
    REQUIRE(shortcuts.size() == 1);  // 2.1 > 2.0
    CHECK(shortcuts[0].c == 2.0);
    CHECK(shortcuts[0].c_tilde == 2.0);
    CHECK(g.find_edge(kV, kX)->c_tilde == 1.1);  // no memory update on shortcut
}

TEST_CASE("contract_node skips the coinciding-neighbor pair") {
    // Bidirected pair 0 <-> 1: contracting 1 must not try a (0, 0) shortcut.
    ContractionGraph g = make_graph(2, {{0, 1, 1}, {1, 0, 1}});
    auto shortcuts = contract_node(g, 1, 0.0, WitnessLimits{});
    CHECK(shortcuts.empty());
    CHECK(g.edge_count() == 0);
}

TEST_CASE("contract_node refuses a dead node") {
    ContractionGraph g = make_graph(2, {{0, 1, 1}});
    contract_node(g, 1, 0.0, WitnessLimits{});
    CHECK_THROWS_AS(contract_node(g, 1, 0.0, WitnessLimits{}), std::invalid_argument);
}

TEST_CASE("build_hierarchy on an edgeless graph") {
    Hierarchy h = build_hierarchy(ContractionGraph(5), 0.1, WitnessLimits{});
    CHECK(h.node_count == 5);
    CHECK(h.edges.empty());
    CHECK(h.order.is_permutation());
}

TEST_CASE("build_hierarchy shortcut count depends on the forced order") {
    auto path = [] { return make_graph(3, {{0, 1, 1}, {1, 2, 1}}); };

    NodeOrder middle_first{{1, 0, 2}};  // rank[0]=1, rank[1]=0, rank[2]=2
    Hierarchy a = build_hierarchy(path(), middle_first, 0.0, WitnessLimits{});
    CHECK(a.shortcut_count() == 1);

    NodeOrder middle_last{{0, 2, 1}};
    Hierarchy b = build_hierarchy(path(), middle_last, 0.0, WitnessLimits{});
    CHECK(b.shortcut_count() == 0);
    CHECK(b.edges.size() == 2);
}

TEST_CASE("exact preprocessing never touches witness memory") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        ContractionGraph g = generate_random_graph(60, 240, 1, 100, seed);
        Hierarchy h = build_hierarchy(g, 0.0, WitnessLimits{});
        for (const DualWeightEdge& e : h.edges) CHECK(e.c_tilde == e.c);
    }
}

TEST_CASE("witness memory stays within the epsilon bound") {
    for (double eps : {0.05, 0.1, 0.3}) {
        for (std::uint64_t seed : {10ull, 11ull, 12ull}) {
            ContractionGraph g = generate_random_graph(80, 320, 1, 100, seed);
            Hierarchy h = build_hierarchy(g, eps, WitnessLimits{});
            CHECK(count_bound_violations(h) == 0);
            for (const DualWeightEdge& e : h.edges) CHECK(e.c_tilde <= e.c);
        }
    }
}

TEST_CASE("every shortcut is the frozen sum of its component edges") {
    ContractionGraph g = generate_random_graph(70, 280, 1, 50, 21);
    for (double eps : {0.0, 0.1}) {
        Hierarchy h = build_hierarchy(g, eps, WitnessLimits{});
        auto find = [&](NodeId tail, NodeId head) -> const DualWeightEdge* {
            for (const DualWeightEdge& e : h.edges)
                if (e.tail == tail && e.head == head) return &e;
            return nullptr;
        };
        for (const DualWeightEdge& e : h.edges) {
            if (!e.is_shortcut()) continue;
            const DualWeightEdge* first = find(e.tail, e.middle);
            const DualWeightEdge* second = find(e.middle, e.head);
            REQUIRE(first != nullptr);
            REQUIRE(second != nullptr);
            CHECK(close(e.c, first->c + second->c));
        }
    }
}

TEST_CASE("contraction steps never shrink alive distances, exact mode preserves them") {
    for (double eps : {0.0, 0.2}) {
        ContractionGraph g = generate_random_graph(25, 100, 1, 20, 31);
        auto original = testing::all_pairs_shortest(g);
        NodeOrder order = testing::random_order(25, 5);
        std::vector<NodeId> by_rank(25);
        for (NodeId u = 0; u < 25; ++u) by_rank[order.rank[u]] = u;

        auto before = original;
        for (NodeId u : by_rank) {
            contract_node(g, u, eps, WitnessLimits{});
            auto after = testing::all_pairs_shortest(g);
            for (NodeId a = 0; a < 25; ++a) {
                if (!g.is_alive(a)) continue;
                for (NodeId b = 0; b < 25; ++b) {
                    if (!g.is_alive(b)) continue;
                    if (before[a][b] == kInfinity) {
                        CHECK(after[a][b] == kInfinity);
                        continue;
                    }
                    // shortcuts only add paths of lengths that already exist
                    CHECK(after[a][b] >= before[a][b] * (1 - kRelTol));
                    CHECK(after[a][b] <= (1 + eps) * original[a][b] * (1 + kRelTol));
                    if (eps == 0.0) CHECK(close(after[a][b], before[a][b]));
                }
            }
            before = std::move(after);
        }
    }
}
