#include "ach/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ach {

DualWeightEdge::DualWeightEdge(NodeId tail, NodeId head, Weight c,
                               Weight c_tilde, NodeId middle)
    : tail(tail), head(head), c(c), c_tilde(c_tilde), middle(middle) {
    if (tail == head)
        throw std::invalid_argument("edge is a self-loop: node " + std::to_string(tail));
    if (!(c >= 0) || !(c_tilde >= 0))
        throw std::invalid_argument("edge weight must be nonnegative");
    if (c_tilde > c)
        throw std::invalid_argument("edge c_tilde exceeds c");
}

ContractionGraph::ContractionGraph(std::size_t node_count)
    : out_(node_count), in_(node_count), alive_(node_count, true),
      alive_count_(node_count) {}

void ContractionGraph::check_node(NodeId u) const {
    if (u >= out_.size())
        throw std::out_of_range("node id " + std::to_string(u) + " out of range");
}

const DualWeightEdge* ContractionGraph::find_edge(NodeId tail, NodeId head) const {
    check_node(tail);
    check_node(head);
    for (const DualWeightEdge& e : out_[tail])
        if (e.head == head) return &e;
    return nullptr;
}

EdgeChange ContractionGraph::add_or_merge_edge(const DualWeightEdge& e) {
    check_node(e.tail);
    check_node(e.head);
    if (!alive_[e.tail] || !alive_[e.head])
        throw std::invalid_argument("add_or_merge_edge: endpoint is contracted");

    for (DualWeightEdge& old : out_[e.tail]) {
        if (old.head != e.head) continue;
        // Pair-wise minima; middle follows whichever edge supplies the
        // minimum c (ties keep the existing edge).
        EdgeChange change = EdgeChange::kept_existing;
        if (e.c < old.c) {
            old.c = e.c;
            old.middle = e.middle;
            change = EdgeChange::replaced;
        }
        old.c_tilde = std::min(old.c_tilde, e.c_tilde);
        for (DualWeightEdge& mirror : in_[e.head]) {
            if (mirror.tail == e.tail) {
                mirror = old;
                break;
            }
        }
        return change;
    }

    out_[e.tail].push_back(e);
    in_[e.head].push_back(e);
    ++edge_count_;
    return EdgeChange::inserted;
}

void ContractionGraph::tighten_c_tilde(NodeId tail, NodeId head, Weight value) {
    for (DualWeightEdge& e : out_[tail]) {
        if (e.head == head) {
            e.c_tilde = std::min(e.c_tilde, value);
            break;
        }
    }
    for (DualWeightEdge& e : in_[head]) {
        if (e.tail == tail) {
            e.c_tilde = std::min(e.c_tilde, value);
            break;
        }
    }
}

void ContractionGraph::remove_node(NodeId u) {
    check_node(u);
    if (!alive_[u])
        throw std::invalid_argument("remove_node: node " + std::to_string(u) +
                                    " already contracted");
    for (const DualWeightEdge& e : out_[u]) {
        auto& list = in_[e.head];
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [u](const DualWeightEdge& x) { return x.tail == u; }),
                   list.end());
    }
    for (const DualWeightEdge& e : in_[u]) {
        auto& list = out_[e.tail];
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [u](const DualWeightEdge& x) { return x.head == u; }),
                   list.end());
    }
    edge_count_ -= out_[u].size() + in_[u].size();
    out_[u].clear();
    in_[u].clear();
    out_[u].shrink_to_fit();
    in_[u].shrink_to_fit();
    alive_[u] = false;
    --alive_count_;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("DIMACS parse error at line " +
                             std::to_string(line_no) + ": " + what);
}

}  // namespace

ContractionGraph load_dimacs(std::istream& in) {
    ContractionGraph g;
    bool have_problem = false;
    long long n = 0;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;  // blank line
        if (kind == "c") continue;

        if (kind == "p") {
            if (have_problem) parse_fail(line_no, "duplicate problem line");
            std::string sp;
            long long m = 0;
            if (!(ls >> sp >> n >> m) || sp != "sp")
                parse_fail(line_no, "expected 'p sp <n> <m>'");
            if (n < 0 || m < 0) parse_fail(line_no, "negative node or arc count");
            g = ContractionGraph(static_cast<std::size_t>(n));
            have_problem = true;
        } else if (kind == "a") {
            if (!have_problem) parse_fail(line_no, "arc line before problem line");
            long long tail = 0, head = 0, weight = 0;
            if (!(ls >> tail >> head >> weight))
                parse_fail(line_no, "expected 'a <tail> <head> <weight>'");
            std::string extra;
            if (ls >> extra) parse_fail(line_no, "trailing token '" + extra + "'");
            if (tail < 1 || tail > n || head < 1 || head > n)
                throw std::out_of_range("DIMACS line " + std::to_string(line_no) +
                                        ": node id out of range 1.." + std::to_string(n));
            if (weight < 0)
                throw std::domain_error("DIMACS line " + std::to_string(line_no) +
                                        ": negative arc weight");
            if (tail == head) continue;  // self-loop, never on a shortest path
            auto w = static_cast<Weight>(weight);
            g.add_or_merge_edge(DualWeightEdge(static_cast<NodeId>(tail - 1),
                                               static_cast<NodeId>(head - 1), w, w));
        } else {
            parse_fail(line_no, "unknown line type '" + kind + "'");
        }
    }
    if (!have_problem) parse_fail(line_no, "missing problem line");
    return g;
}

ContractionGraph load_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_dimacs(in);
}

void emit_dimacs(const ContractionGraph& g, std::ostream& out) {
    out << "p sp " << g.node_count() << ' ' << g.edge_count() << '\n';
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (const DualWeightEdge& e : g.out_edges(u)) {
            auto w = static_cast<long long>(std::llround(e.c));
            if (static_cast<Weight>(w) != e.c)
                throw std::invalid_argument("emit_dimacs: non-integral weight");
            out << "a " << e.tail + 1 << ' ' << e.head + 1 << ' ' << w << '\n';
        }
    }
}

ContractionGraph generate_random_graph(std::size_t n, std::size_t m,
                                       Weight weight_min, Weight weight_max,
                                       std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_random_graph: n must be >= 1");
    if (!(0 < weight_min && weight_min <= weight_max))
        throw std::invalid_argument("generate_random_graph: need 0 < min <= max weight");
    if (m > 0 && n < 2)
        throw std::invalid_argument("generate_random_graph: edges need n >= 2");

    auto lo = static_cast<long long>(std::llround(weight_min));
    auto hi = static_cast<long long>(std::llround(weight_max));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> node_dist(0, n - 1);
    std::uniform_int_distribution<std::uint64_t> other_dist(0, n - 2);
    std::uniform_int_distribution<long long> weight_dist(lo, hi);

    ContractionGraph g(n);
    for (std::size_t i = 0; i < m; ++i) {
        auto tail = static_cast<NodeId>(node_dist(rng));
        auto head = static_cast<NodeId>(other_dist(rng));
        if (head >= tail) ++head;  // uniform over ordered pairs with tail != head
        auto w = static_cast<Weight>(weight_dist(rng));
        g.add_or_merge_edge(DualWeightEdge(tail, head, w, w));
    }
    return g;
}

}  // namespace ach
