#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "alertgraph/context_model.hpp"
#include "alertgraph/errors.hpp"
#include "alertgraph/graph_io.hpp"
#include "alertgraph/layout.hpp"
#include "support/oracles.hpp"
#include "support/scenario.hpp"

#ifndef ALERTGRAPH_GOLDEN_DIR
#error "ALERTGRAPH_GOLDEN_DIR must be defined"
#endif

using namespace alertgraph;

namespace {

NodeKey key(int i) { return {Micro::HostDiscovery, "svc" + std::to_string(i), 0}; }

GlobalAttackGraph raw_graph(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    GlobalAttackGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        AttackGraphNode node;
        node.key = key(static_cast<int>(i));
        g.nodes.push_back(node);
    }
    std::sort(g.nodes.begin(), g.nodes.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    for (auto [a, b] : edges) {
        AttackGraphEdge e;
        e.from = key(a);
        e.to = key(b);
        e.attacker_ip = "a";
        e.victim_ip = "v";
        g.edges.push_back(e);
    }
    return g;
}

std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// HD(http) -> PAE(http) -> RPE(http) -> DE(etlservicemgr), plus the root.
GlobalAttackGraph five_node_fixture() {
    const auto t0 = from_micros(1541203200000000LL);
    auto ep = [&](std::size_t id, Micro m, const std::string& service, int s, int e) {
        Episode x;
        x.id = id;
        x.attacker_ip = "10.0.254.202";
        x.victim_ip = "10.0.0.20";
        x.micro = m;
        x.macro = macro_of(m);
        x.severity = default_severity(m);
        x.service = service;
        x.start = t0 + std::chrono::seconds(s);
        x.end = t0 + std::chrono::seconds(e);
        x.alert_count = 1;
        return x;
    };
    const std::vector<EpisodeSequence> seqs{
        {"10.0.254.202",
         "10.0.0.20",
         {ep(0, Micro::HostDiscovery, "http", 0, 40), ep(1, Micro::PublicAppExploitation, "http", 400, 460),
          ep(2, Micro::RootPrivilegeEscalation, "http", 1300, 1310),
          ep(3, Micro::DataExfiltration, "etlservicemgr", 4000, 4100)}}};
    const auto objectives = build_objective_graphs(seqs);
    return build_global_graph(objectives);
}

}  // namespace

TEST_CASE("layout method names") {
    CHECK(parse_layout_method("Directed") == LayoutMethod::Directed);
    CHECK(parse_layout_method("hubsize") == LayoutMethod::Hubsize);
    CHECK_FALSE(parse_layout_method("circular"));
}

TEST_CASE("directed layout") {
    SUBCASE("chain") {
        const auto levels = assign_layout_levels(raw_graph(3, {{0, 1}, {1, 2}}), LayoutMethod::Directed);
        CHECK(levels.at(key(0)) == 0);
        CHECK(levels.at(key(1)) == 1);
        CHECK(levels.at(key(2)) == 2);
    }
    SUBCASE("cycles collapse to one level") {
        const auto levels =
            assign_layout_levels(raw_graph(4, {{0, 1}, {1, 2}, {2, 1}, {2, 3}}), LayoutMethod::Directed);
        CHECK(levels.at(key(1)) == levels.at(key(2)));
        CHECK(levels.at(key(3)) == levels.at(key(1)) + 1);
    }
    SUBCASE("random DAGs match brute force") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 300; ++trial) {
            const int n = std::uniform_int_distribution<int>(1, 12)(rng);
            std::vector<std::pair<int, int>> edges;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (std::bernoulli_distribution(0.3)(rng)) edges.emplace_back(a, b);
            const auto expected = oracle::longest_path_levels(n, edges);
            const auto levels = assign_layout_levels(raw_graph(n, edges), LayoutMethod::Directed);
            for (int v = 0; v < n; ++v) CHECK(levels.at(key(v)) == expected[v]);
        }
    }
}

TEST_CASE("hubsize layout") {
    const auto levels = assign_layout_levels(raw_graph(5, {{1, 0}, {2, 0}, {0, 3}, {0, 4}}), LayoutMethod::Hubsize);
    CHECK(levels.at(key(0)) == 0);
    // equal degrees fall back to key order
    CHECK(levels.at(key(1)) == 1);
    CHECK(levels.at(key(2)) == 2);
    CHECK(levels.at(key(4)) == 4);
}

TEST_CASE("export formats") {
    CHECK(parse_graph_format("dot") == GraphFormat::GraphvizText);
    CHECK(parse_graph_format("json") == GraphFormat::StructuredGraph);
    CHECK_THROWS_AS(parse_graph_format("png"), ValidationError);

    const auto root_only = build_global_graph({});
    const auto doc = nlohmann::json::parse(export_graph(root_only, GraphFormat::StructuredGraph));
    CHECK(doc["nodes"].size() == 1);
    CHECK(doc["edges"].empty());
}

TEST_CASE("structured export round trips") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto sc = scenario::generate(seed, {.alerts = 250});
        const auto seqs = mine_sequences(sc.alerts);
        const auto annotated = assign_context_ids(seqs, SuffixModel::build(seqs, 2));
        const auto g = build_global_graph(build_objective_graphs(annotated));
        const auto text = export_graph(g, GraphFormat::StructuredGraph, {LayoutMethod::Directed, std::nullopt});
        CHECK(import_structured_graph(text) == g);
        CHECK(export_graph(g, GraphFormat::StructuredGraph, {LayoutMethod::Directed, std::nullopt}) == text);
        CHECK(export_graph(g, GraphFormat::GraphvizText) == export_graph(g, GraphFormat::GraphvizText));
    }
    CHECK_THROWS_AS(import_structured_graph("{}"), FormatError);
    CHECK_THROWS_AS(import_structured_graph("nope"), FormatError);
}

TEST_CASE("five node fixture matches the golden exports") {
    const auto g = five_node_fixture();
    REQUIRE(g.nodes.size() == 5);
    const std::string dir = ALERTGRAPH_GOLDEN_DIR;
    CHECK(export_graph(g, GraphFormat::GraphvizText, {LayoutMethod::Directed, std::nullopt}) ==
          read(dir + "/five_node.dot"));
    CHECK(export_graph(g, GraphFormat::StructuredGraph, {LayoutMethod::Directed, std::nullopt}) ==
          read(dir + "/five_node.json"));
}
