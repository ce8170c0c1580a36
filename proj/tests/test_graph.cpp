#include <doctest.h>

#include "alertgraph/context_model.hpp"
#include "alertgraph/errors.hpp"
#include "alertgraph/graph.hpp"
#include "support/oracles.hpp"
#include "support/scenario.hpp"

using namespace alertgraph;
using namespace std::chrono_literals;

namespace {

const Timestamp kT0 = from_micros(1541203200000000LL);

Episode ep(std::size_t id, Micro m, const std::string& service, int start_s, int end_s, int ctx = 0) {
    Episode e;
    e.id = id;
    e.micro = m;
    e.macro = macro_of(m);
    e.severity = default_severity(m);
    e.service = service;
    e.start = kT0 + std::chrono::seconds(start_s);
    e.end = kT0 + std::chrono::seconds(end_s);
    e.alert_count = 1;
    e.context_id = ctx;
    return e;
}

EpisodeSequence seq(const std::string& attacker, const std::string& victim, std::vector<Episode> eps) {
    for (auto& e : eps) {
        e.attacker_ip = attacker;
        e.victim_ip = victim;
    }
    return {attacker, victim, std::move(eps)};
}

GlobalAttackGraph global_of(const std::vector<EpisodeSequence>& seqs) {
    const auto objectives = build_objective_graphs(seqs);
    return build_global_graph(objectives);
}

std::vector<EpisodeSequence> random_sequences(std::uint64_t seed, std::size_t alerts = 300) {
    const auto sc = scenario::generate(seed, {.alerts = alerts, .attackers = 4, .victims = 4});
    const auto seqs = mine_sequences(sc.alerts);
    return assign_context_ids(seqs, SuffixModel::build(seqs, 2));
}

}  // namespace

TEST_CASE("elapsed labels") {
    CHECK(elapsed_label(3661.0) == "01:01:01");
    CHECK(elapsed_label(0.0) == "00:00:00");
    CHECK(elapsed_label(59.9) == "00:00:59");
    CHECK(elapsed_label(359999.0) == "99:59:59");
    CHECK(elapsed_label(Duration(61'500'000)) == "00:01:01");
    CHECK_THROWS_AS(elapsed_label(-0.5), ValidationError);
    CHECK_THROWS_AS(elapsed_label(Duration(-1)), ValidationError);
}

TEST_CASE("node keys") {
    const NodeKey k{Micro::DataExfiltration, "http", 7};
    CHECK(k.label() == "Data Exfiltration|http|7");
    CHECK(NodeKey::parse(k.label()) == k);
    CHECK(NodeKey::root().label() == "root");
    CHECK(NodeKey::parse("root") == NodeKey::root());
    CHECK_FALSE(NodeKey::parse("Data Exfiltration|http"));
    CHECK_FALSE(NodeKey::parse("Nope|http|1"));
    CHECK_FALSE(NodeKey::parse("Data Exfiltration|http|x"));
    CHECK(shape_for(Severity::Low) == NodeShape::Ellipse);
    CHECK(shape_for(Severity::Medium) == NodeShape::Box);
    CHECK(shape_for(Severity::High) == NodeShape::Hexagon);
}

TEST_CASE("objective graphs") {
    SUBCASE("single exfiltration path") {
        const std::vector<EpisodeSequence> seqs{seq("10.0.254.202", "10.0.0.20",
                                                    {ep(0, Micro::HostDiscovery, "http", 0, 10),
                                                     ep(1, Micro::PublicAppExploitation, "http", 100, 110),
                                                     ep(2, Micro::DataExfiltration, "etlservicemgr", 200, 260)})};
        const auto graphs = build_objective_graphs(seqs);
        REQUIRE(graphs.size() == 1);
        const auto& g = graphs[0];
        CHECK(g.micro == Micro::DataExfiltration);
        CHECK(g.service == "etlservicemgr");
        CHECK(g.victim_ip == "10.0.0.20");
        const auto end = std::find_if(g.nodes.begin(), g.nodes.end(), [](const auto& n) { return n.is_end; });
        REQUIRE(end != g.nodes.end());
        CHECK(end->shape == NodeShape::Hexagon);
        CHECK(g.edges.size() == 2);
        for (const auto& e : g.edges) CHECK(e.label() == "00:01:30");
    }
    SUBCASE("each high episode is an objective") {
        const std::vector<EpisodeSequence> seqs{seq("a", "v",
                                                    {ep(0, Micro::HostDiscovery, "http", 0, 1),
                                                     ep(1, Micro::RootPrivilegeEscalation, "http", 5, 6),
                                                     ep(2, Micro::DataExfiltration, "etlservicemgr", 9, 9)})};
        const auto graphs = build_objective_graphs(seqs);
        REQUIRE(graphs.size() == 2);
        CHECK(graphs[0].micro == Micro::RootPrivilegeEscalation);
        CHECK(graphs[0].paths[0].steps.size() == 2);
        CHECK(graphs[1].paths[0].steps.size() == 3);
    }
    SUBCASE("no high episode") {
        const std::vector<EpisodeSequence> seqs{
            seq("a", "v", {ep(0, Micro::HostDiscovery, "http", 0, 1), ep(1, Micro::BruteForceCredentials, "ssh", 5, 6)})};
        CHECK(build_objective_graphs(seqs).empty());
    }
    SUBCASE("two attackers, one objective") {
        const std::vector<EpisodeSequence> seqs{
            seq("a", "v", {ep(0, Micro::HostDiscovery, "http", 0, 1), ep(1, Micro::NetworkDoS, "http", 5, 6)}),
            seq("b", "v", {ep(2, Micro::ServiceDiscovery, "http", 0, 1), ep(3, Micro::NetworkDoS, "http", 7, 8)}),
        };
        const auto graphs = build_objective_graphs(seqs);
        REQUIRE(graphs.size() == 1);
        CHECK(graphs[0].attackers == std::set<std::string>{"a", "b"});
        CHECK(std::count_if(graphs[0].nodes.begin(), graphs[0].nodes.end(), [](const auto& n) { return n.is_start; }) ==
              2);
    }
}

TEST_CASE("global graph") {
    SUBCASE("nodes merge across objectives") {
        const std::vector<EpisodeSequence> seqs{
            seq("a", "v1", {ep(0, Micro::DataExfiltration, "http", 0, 1, 7)}),
            seq("b", "v2", {ep(1, Micro::HostDiscovery, "ssh", 0, 1), ep(2, Micro::DataExfiltration, "http", 3, 4, 7)}),
        };
        const auto g = global_of(seqs);
        CHECK(std::count_if(g.nodes.begin(), g.nodes.end(), [](const auto& n) {
                  return n.key == NodeKey{Micro::DataExfiltration, "http", 7};
              }) == 1);
        const auto* de = g.find({Micro::DataExfiltration, "http", 7});
        REQUIRE(de);
        CHECK(de->episode_refs == std::vector<std::size_t>{0, 2});
    }
    SUBCASE("zero graphs leaves the root") {
        const auto g = build_global_graph({});
        REQUIRE(g.nodes.size() == 1);
        CHECK(g.nodes[0].is_root());
        CHECK(g.edges.empty());
        CHECK(g.scored_nodes().empty());
    }
    SUBCASE("parallel transitions collapse with the earliest elapsed time") {
        const std::vector<EpisodeSequence> seqs{seq("a", "v",
                                                    {ep(0, Micro::HostDiscovery, "http", 0, 10),
                                                     ep(1, Micro::NetworkDoS, "http", 70, 80),
                                                     ep(2, Micro::HostDiscovery, "http", 1000, 1000),
                                                     ep(3, Micro::NetworkDoS, "http", 1030, 1031)})};
        const auto g = global_of(seqs);
        const auto it = std::find_if(g.edges.begin(), g.edges.end(), [](const auto& e) {
            return e.from.micro == Micro::HostDiscovery && e.to.micro == Micro::NetworkDoS;
        });
        REQUIRE(it != g.edges.end());
        CHECK(it->label() == "00:00:30");
        CHECK(it->multiplicity == 2);
    }
    SUBCASE("random scenario matches the key oracle") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto seqs = random_sequences(seed);
            const auto g = global_of(seqs);
            auto expected = oracle::node_keys(seqs);
            expected.insert(NodeKey::root());
            std::set<NodeKey> got;
            for (const auto& n : g.nodes) got.insert(n.key);
            CHECK(got == expected);
            CHECK(assemble_global_graph(extract_objective_paths(seqs)) == g);
        }
    }
}

TEST_CASE("filtering") {
    const std::vector<EpisodeSequence> seqs{
        seq("10.0.254.202", "10.0.0.20",
            {ep(0, Micro::ServiceDiscovery, "http", 0, 5), ep(1, Micro::RootPrivilegeEscalation, "http", 100, 110),
             ep(2, Micro::DataManipulation, "http", 200, 210), ep(3, Micro::DataExfiltration, "http", 300, 310)}),
        seq("10.0.254.203", "10.0.0.22",
            {ep(4, Micro::HostDiscovery, "http", 0, 5), ep(5, Micro::DataExfiltration, "ssh", 50, 60)}),
    };
    const auto g = global_of(seqs);

    SUBCASE("empty filter is the identity") { CHECK(filter_graph(g, {}) == g); }
    SUBCASE("absent host gives the root alone") {
        FilterSpec f;
        f.victim_ip = "192.0.2.1";
        const auto r = filter_graph(g, f);
        REQUIRE(r.nodes.size() == 1);
        CHECK(r.nodes[0].is_root());
    }
    SUBCASE("victim plus micro") {
        FilterSpec f;
        f.victim_ip = "10.0.0.20";
        f.micro = Micro::DataExfiltration;
        const auto r = filter_graph(g, f);
        for (const auto& p : r.paths) {
            CHECK(p.victim_ip == "10.0.0.20");
            CHECK(p.objective().node.micro == Micro::DataExfiltration);
        }
        CHECK(r.find({Micro::RootPrivilegeEscalation, "http", 0}));
        CHECK_FALSE(r.find({Micro::DataExfiltration, "ssh", 0}));
    }
    SUBCASE("micro and service must meet on one step") {
        FilterSpec f;
        f.micro = Micro::DataExfiltration;
        f.service = "http";
        const auto r = filter_graph(g, f);
        CHECK_FALSE(r.find({Micro::HostDiscovery, "http", 0}));
        CHECK(r.find({Micro::DataExfiltration, "http", 0}));
    }
    SUBCASE("time window") {
        FilterSpec f;
        f.from = kT0 + 40s;
        f.to = kT0 + 55s;
        const auto r = filter_graph(g, f);
        CHECK(r.find({Micro::DataExfiltration, "ssh", 0}));
        CHECK_FALSE(r.find({Micro::DataExfiltration, "http", 0}));
    }
}

TEST_CASE("graph invariants over random scenarios") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto seqs = random_sequences(seed * 7919);
        const auto g = global_of(seqs);
        std::set<NodeKey> keys;
        std::size_t roots = 0;
        for (const auto& n : g.nodes) {
            CHECK(keys.insert(n.key).second);
            roots += n.is_root() ? 1 : 0;
            CHECK(n.shape == shape_for(n.severity));
        }
        CHECK(roots == 1);
        for (const auto& n : g.nodes) {
            if (n.severity != Severity::High || n.is_root()) continue;
            CHECK(std::any_of(g.edges.begin(), g.edges.end(),
                              [&](const auto& e) { return e.from == n.key && e.to.is_root(); }));
        }
        for (const auto& e : g.edges) {
            CHECK(keys.count(e.from));
            CHECK(keys.count(e.to));
            CHECK(e.elapsed >= Duration::zero());
        }
        std::size_t episodes = 0;
        for (const auto& s : seqs) episodes += s.episodes.size();
        CHECK(g.scored_nodes().size() <= episodes);

        for (const auto& s : seqs) {
            FilterSpec f;
            f.attacker_ip = s.attacker_ip;
            const auto r = filter_graph(g, f);
            for (const auto& e : r.edges) CHECK(std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end());
        }
    }
}
