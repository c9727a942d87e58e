#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ach/graph.hpp"
#include "ach/hierarchy.hpp"
#include "ach/query.hpp"
#include "ach/search_graph.hpp"
#include "ach/verify.hpp"

namespace {

using namespace ach;

std::string format_weight(Weight w) {
    if (w == kInfinity) return "inf";
    if (w == std::floor(w) && std::abs(w) < 9e15)
        return std::to_string(static_cast<long long>(w));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", w);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

int run_preprocess(const std::string& input, const std::string& output, double eps,
                   const WitnessLimits& limits) {
    ContractionGraph g = load_dimacs_file(input);
    std::cout << "graph: " << g.node_count() << " nodes, " << g.edge_count()
              << " edges\n";

    auto start = std::chrono::steady_clock::now();
    Hierarchy h = build_hierarchy(g, eps, limits);
    double ms = elapsed_ms(start);

    save_ch_file(h, output);
    std::cout << "hierarchy: " << h.edges.size() << " edges ("
              << h.shortcut_count() << " shortcuts), epsilon " << eps << "\n"
              << "preprocessing time: " << format_weight(std::round(ms)) << " ms\n";
    return 0;
}

int run_query(const std::string& ch_path, std::uint32_t source, std::uint32_t target,
              bool stalling, bool want_path) {
    Hierarchy h = load_ch_file(ch_path);
    if (source < 1 || source > h.node_count || target < 1 || target > h.node_count) {
        std::cerr << "error: node ids must be in 1.." << h.node_count << "\n";
        return 1;
    }
    auto s = static_cast<NodeId>(source - 1);
    auto t = static_cast<NodeId>(target - 1);

    SearchGraph sg = build_search_graph(h);
    QueryResult r = stalling ? query_stalling(sg, s, t, h.epsilon)
                             : query_basic(sg, s, t);
    if (!r.reachable()) {
        std::cout << "unreachable\n";
        return 0;
    }
    std::cout << format_weight(r.distance) << "\n";
    if (want_path) {
        std::cout << "path:";
        for (NodeId node : retrieve_path(r, h)) std::cout << ' ' << node + 1;
        std::cout << "\n";
    }
    return 0;
}

int run_verify(const std::string& ch_path, const std::string& graph_path,
               std::size_t pairs, std::uint64_t seed, bool stalling) {
    Hierarchy h = load_ch_file(ch_path);
    ContractionGraph g = load_dimacs_file(graph_path);
    ErrorStats stats = verify_pairs(g, h, pairs, seed, stalling);

    std::cout << "pairs: " << stats.pairs << "\n"
              << "reachable: " << stats.reachable << "\n"
              << "max ratio: " << stats.max_ratio << "\n"
              << "mean ratio: " << stats.mean_ratio << "\n"
              << "violations: " << stats.violations << "\n"
              << "settled nodes: " << stats.settled << "\n"
              << "relaxed arcs: " << stats.arcs_relaxed << "\n";
    nlohmann::json record{{"pairs", stats.pairs},
                          {"reachable", stats.reachable},
                          {"max_ratio", stats.max_ratio},
                          {"mean_ratio", stats.mean_ratio},
                          {"violations", stats.violations},
                          {"settled", stats.settled},
                          {"arcs_relaxed", stats.arcs_relaxed},
                          {"epsilon", h.epsilon},
                          {"stalling", stalling},
                          {"seed", seed}};
    std::cout << record.dump() << "\n";
    return stats.violations == 0 ? 0 : 1;
}

int run_gen(const std::string& output, std::size_t nodes, std::size_t edges,
            std::uint64_t seed, double wmin, double wmax) {
    ContractionGraph g = generate_random_graph(nodes, edges, wmin, wmax, seed);
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open " + output);
    emit_dimacs(g, out);
    std::cout << "wrote " << output << ": " << g.node_count() << " nodes, "
              << g.edge_count() << " edges\n";
    return 0;
}

int run_stats(const std::string& ch_path) {
    Hierarchy h = load_ch_file(ch_path);
    std::size_t shortcuts = h.shortcut_count();
    std::size_t violations = count_bound_violations(h);
    std::cout << "epsilon: " << h.epsilon << "\n"
              << "nodes: " << h.node_count << "\n"
              << "edges: " << h.edges.size() << " (" << shortcuts << " shortcuts, "
              << (h.edges.empty() ? 0.0
                                  : static_cast<double>(shortcuts) / h.edges.size())
              << " fraction)\n"
              << "weight-bound audit: "
              << (violations == 0 ? "ok" : std::to_string(violations) + " violations")
              << "\n";
    return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epsilon-approximate contraction hierarchies"};
    app.require_subcommand(1);

    std::string input, output, ch_path, graph_path;
    double eps = 0;
    WitnessLimits limits;
    std::uint32_t source = 0, target = 0;
    std::size_t pairs = 1000, nodes = 0, edges = 0;
    std::uint64_t seed = 0;
    double wmin = 1, wmax = 1000;
    bool no_stalling = false, want_path = false;

    auto* preprocess = app.add_subcommand("preprocess", "build a hierarchy from a DIMACS graph");
    preprocess->add_option("--input", input, "DIMACS .gr input")->required();
    preprocess->add_option("--epsilon", eps, "approximation parameter, >= 0")
        ->required()
        ->check(CLI::NonNegativeNumber);
    preprocess->add_option("--output", output, "hierarchy .ach output")->required();
    preprocess->add_option("--max-settled", limits.max_settled,
                           "witness search settle cap");
    preprocess->add_option("--max-hops", limits.max_hops, "witness search hop cap");

    auto* query = app.add_subcommand("query", "point-to-point distance query");
    query->add_option("--ch", ch_path, "hierarchy .ach file")->required();
    query->add_option("--source", source, "source node, 1-based")->required();
    query->add_option("--target", target, "target node, 1-based")->required();
    query->add_flag("--no-stalling", no_stalling, "disable stall-on-demand");
    query->add_flag("--path", want_path, "also print the node sequence");

    auto* verify = app.add_subcommand("verify", "compare queries against exact Dijkstra");
    verify->add_option("--ch", ch_path, "hierarchy .ach file")->required();
    verify->add_option("--graph", graph_path, "original DIMACS .gr file")->required();
    verify->add_option("--pairs", pairs, "number of random pairs");
    verify->add_option("--seed", seed, "pair sampling seed");
    verify->add_flag("--no-stalling", no_stalling, "disable stall-on-demand");

    auto* gen = app.add_subcommand("gen", "generate a random DIMACS graph");
    gen->add_option("--nodes", nodes, "node count")->required();
    gen->add_option("--edges", edges, "edge count before merging")->required();
    gen->add_option("--seed", seed, "generator seed")->required();
    gen->add_option("--output", output, "DIMACS .gr output")->required();
    gen->add_option("--wmin", wmin, "minimum edge weight");
    gen->add_option("--wmax", wmax, "maximum edge weight");

    auto* stats = app.add_subcommand("stats", "print hierarchy statistics");
    stats->add_option("--ch", ch_path, "hierarchy .ach file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (preprocess->parsed()) return run_preprocess(input, output, eps, limits);
        if (query->parsed())
            return run_query(ch_path, source, target, !no_stalling, want_path);
        if (verify->parsed())
            return run_verify(ch_path, graph_path, pairs, seed, !no_stalling);
        if (gen->parsed()) return run_gen(output, nodes, edges, seed, wmin, wmax);
        if (stats->parsed()) return run_stats(ch_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
