#include <doctest.h>

#include <stdexcept>

#include <set>
#include <sstream>

#include "ach/graph.hpp"
#include "test_support.hpp"

using namespace ach;

TEST_CASE("load_dimacs parses the basic format") {
    std::istringstream in(
        "c comment line\n"
        "p sp 3 2\n"
        "a 1 2 4\n"
        "\n"
        "a 2 3 6\n");
    ContractionGraph g = load_dimacs(in);
    REQUIRE(g.node_count() == 3);
    REQUIRE(g.edge_count() == 2);
    const DualWeightEdge* e01 = g.find_edge(0, 1);
    const DualWeightEdge* e12 = g.find_edge(1, 2);
    REQUIRE(e01 != nullptr);
    REQUIRE(e12 != nullptr);
    CHECK(e01->c == 4);
    CHECK(e12->c == 6);
}

TEST_CASE("load_dimacs merges parallel arcs by minimum weight") {
    std::istringstream in("p sp 2 2\na 1 2 5\na 1 2 3\n");
    ContractionGraph g = load_dimacs(in);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.find_edge(0, 1)->c == 3);
}

TEST_CASE("load_dimacs drops self-loops") {
    std::istringstream in("p sp 2 1\na 2 2 5\n");
    ContractionGraph g = load_dimacs(in);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("load_dimacs starts every edge with c_tilde == c") {
    std::istringstream in("p sp 4 3\na 1 2 7\na 2 3 1\na 4 1 9\n");
    ContractionGraph g = load_dimacs(in);
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (const DualWeightEdge& e : g.out_edges(u)) CHECK(e.c_tilde == e.c);
}

TEST_CASE("load_dimacs rejects malformed input") {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return load_dimacs(in);
    };
    CHECK_THROWS_WITH_AS(parse("p sp 2 1\na 1 2\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_AS(parse("p sp 2 1\na 1 3 4\n"), std::out_of_range);
    CHECK_THROWS_AS(parse("p sp 2 1\na 1 2 -4\n"), std::domain_error);
    CHECK_THROWS_AS(parse("a 1 2 3\n"), std::runtime_error);  // arc before problem
    CHECK_THROWS_AS(parse("p xx 2 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("q sp 2 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("p sp 2 1\na 1 2 3 9\n"), std::runtime_error);
}

TEST_CASE("dimacs round-trip reproduces node count and edge multiset") {
    ContractionGraph g = generate_random_graph(30, 120, 1, 50, 99);
    std::ostringstream out;
    emit_dimacs(g, out);
    std::istringstream in(out.str());
    ContractionGraph back = load_dimacs(in);

    REQUIRE(back.node_count() == g.node_count());
    REQUIRE(back.edge_count() == g.edge_count());
    using Key = std::tuple<NodeId, NodeId, Weight>;
    std::set<Key> lhs, rhs;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (const DualWeightEdge& e : g.out_edges(u)) lhs.emplace(e.tail, e.head, e.c);
        for (const DualWeightEdge& e : back.out_edges(u)) rhs.emplace(e.tail, e.head, e.c);
    }
    CHECK(lhs == rhs);
}

TEST_CASE("generate_random_graph basics") {
    SUBCASE("single isolated node") {
        ContractionGraph g = generate_random_graph(1, 0, 1, 10, 7);
        CHECK(g.node_count() == 1);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("deterministic for a fixed seed") {
        ContractionGraph a = generate_random_graph(100, 400, 1, 1000, 42);
        ContractionGraph b = generate_random_graph(100, 400, 1, 1000, 42);
        REQUIRE(a.edge_count() == b.edge_count());
        for (NodeId u = 0; u < a.node_count(); ++u) {
            REQUIRE(a.out_edges(u).size() == b.out_edges(u).size());
            for (std::size_t i = 0; i < a.out_edges(u).size(); ++i) {
                CHECK(a.out_edges(u)[i].head == b.out_edges(u)[i].head);
                CHECK(a.out_edges(u)[i].c == b.out_edges(u)[i].c);
            }
        }
    }
    SUBCASE("merging caps edges at n*(n-1) ordered pairs") {
        ContractionGraph g = generate_random_graph(10, 200, 1, 10, 1);
        CHECK(g.edge_count() <= 90);
        for (NodeId u = 0; u < g.node_count(); ++u)
            for (const DualWeightEdge& e : g.out_edges(u)) CHECK(e.tail != e.head);
    }
    SUBCASE("weights stay in range") {
        ContractionGraph g = generate_random_graph(20, 100, 3, 9, 5);
        for (NodeId u = 0; u < g.node_count(); ++u)
            for (const DualWeightEdge& e : g.out_edges(u)) {
                CHECK(e.c >= 3);
                CHECK(e.c <= 9);
            }
    }
}

TEST_CASE("add_or_merge_edge applies pair-wise minima") {
    ContractionGraph g(2);
    CHECK(g.add_or_merge_edge(DualWeightEdge(0, 1, 5, 5)) == EdgeChange::inserted);
    CHECK(g.add_or_merge_edge(DualWeightEdge(0, 1, 3, 3)) == EdgeChange::replaced);
    CHECK(g.find_edge(0, 1)->c == 3);
    CHECK(g.find_edge(0, 1)->c_tilde == 3);
    // c keeps the existing minimum while c_tilde still drops
    CHECK(g.add_or_merge_edge(DualWeightEdge(0, 1, 4, 2)) == EdgeChange::kept_existing);
    CHECK(g.find_edge(0, 1)->c == 3);
    CHECK(g.find_edge(0, 1)->c_tilde == 2);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("add_or_merge_edge keeps the middle of the cheaper edge") {
    ContractionGraph g(4);
    g.add_or_merge_edge(DualWeightEdge(0, 1, 5, 5, 2));
    g.add_or_merge_edge(DualWeightEdge(0, 1, 3, 3, 3));
    CHECK(g.find_edge(0, 1)->middle == 3);
    g.add_or_merge_edge(DualWeightEdge(0, 1, 3, 3, 2));  // tie keeps existing
    CHECK(g.find_edge(0, 1)->middle == 3);
}

TEST_CASE("add_or_merge_edge never increases weights") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w(0.1, 10.0);
    ContractionGraph g(2);
    Weight c = kInfinity, c_tilde = kInfinity;
    for (int i = 0; i < 200; ++i) {
        Weight nc = w(rng);
        Weight nt = std::min(nc, w(rng));
        g.add_or_merge_edge(DualWeightEdge(0, 1, nc, nt));
        const DualWeightEdge* e = g.find_edge(0, 1);
        CHECK(e->c <= std::min(c, nc));
        CHECK(e->c_tilde <= std::min(c_tilde, nt));
        CHECK(e->c_tilde <= e->c);
        c = e->c;
        c_tilde = e->c_tilde;
    }
}

TEST_CASE("add_or_merge_edge rejects dead endpoints and self-loops") {
    ContractionGraph g(3);
    g.add_or_merge_edge(DualWeightEdge(0, 1, 1, 1));
    g.remove_node(1);
    CHECK_THROWS_AS(g.add_or_merge_edge(DualWeightEdge(0, 1, 1, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(DualWeightEdge(2, 2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(DualWeightEdge(0, 1, 1, 2), std::invalid_argument);  // c_tilde > c
}

TEST_CASE("remove_node detaches all incident edges") {
    SUBCASE("middle of a path") {
        ContractionGraph g = testing::make_graph(3, {{0, 1, 1}, {1, 2, 1}});
        g.remove_node(1);
        CHECK(g.edge_count() == 0);
        CHECK(g.out_edges(0).empty());
        CHECK(g.in_edges(2).empty());
        CHECK_FALSE(g.is_alive(1));
        CHECK(g.alive_count() == 2);
    }
    SUBCASE("isolated node") {
        ContractionGraph g = testing::make_graph(3, {{0, 2, 4}});
        g.remove_node(1);
        CHECK(g.edge_count() == 1);
    }
    SUBCASE("removed node has empty adjacency") {
        ContractionGraph g = testing::make_graph(3, {{0, 1, 1}, {1, 2, 1}, {2, 1, 1}});
        g.remove_node(1);
        CHECK(g.out_edges(1).empty());
        CHECK(g.in_edges(1).empty());
        CHECK_THROWS_AS(g.remove_node(1), std::invalid_argument);
    }
}

TEST_CASE("in and out adjacency stay mirror images") {
    ContractionGraph g = generate_random_graph(40, 200, 1, 20, 3);
    g.remove_node(5);
    g.remove_node(17);
    g.add_or_merge_edge(DualWeightEdge(1, 2, 1, 1));
    std::multiset<std::pair<NodeId, NodeId>> from_out, from_in;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (const DualWeightEdge& e : g.out_edges(u)) {
            CHECK(e.tail == u);
            from_out.emplace(e.tail, e.head);
        }
        for (const DualWeightEdge& e : g.in_edges(u)) {
            CHECK(e.head == u);
            from_in.emplace(e.tail, e.head);
        }
    }
    CHECK(from_out == from_in);
    CHECK(from_out.size() == g.edge_count());
}
