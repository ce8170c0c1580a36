#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alertgraph/ais.hpp"
#include "alertgraph/episodes.hpp"
#include "alertgraph/time.hpp"

namespace alertgraph {

enum class NodeShape { Ellipse, Box, Hexagon };

NodeShape shape_for(Severity s) noexcept;
std::string_view to_string(NodeShape s) noexcept;

/// De-duplication key of attack graph nodes. The artificial root is the only
/// key with an empty service.
struct NodeKey {
    Micro micro = Micro::Unknown;
    std::string service;
    int context_id = 0;

    static NodeKey root() { return {Micro::Unknown, "", 0}; }
    bool is_root() const noexcept { return service.empty(); }

    /// "Data Exfiltration|http|7"; the root renders as "root".
    std::string label() const;
    static std::optional<NodeKey> parse(std::string_view label);

    auto operator<=>(const NodeKey&) const = default;
};

NodeKey key_of(const Episode& e);

struct PathStep {
    NodeKey node;
    std::size_t episode_id = 0;
    Severity severity = Severity::Low;
    Timestamp start{};
    Timestamp end{};

    bool operator==(const PathStep&) const = default;
};

/// The prefix of one episode sequence that ends at a High severity episode
/// (the objective).
struct AttackPath {
    std::size_t id = 0;
    std::string attacker_ip;
    std::string victim_ip;
    std::vector<PathStep> steps;

    const PathStep& objective() const { return steps.back(); }

    bool operator==(const AttackPath&) const = default;
};

struct AttackGraphNode {
    NodeKey key;
    Macro macro = Macro::Unknown;
    Severity severity = Severity::Low;
    NodeShape shape = NodeShape::Ellipse;
    bool is_start = false;  // first step of some path: dotted border
    bool is_end = false;    // objective of some path: dotted border
    std::vector<std::size_t> episode_refs;  // sorted, unique

    bool is_root() const noexcept { return key.is_root(); }
    bool operator==(const AttackGraphNode&) const = default;
};

struct AttackGraphEdge {
    NodeKey from;
    NodeKey to;
    std::string attacker_ip;
    std::string victim_ip;
    /// Earliest elapsed time among the collapsed transitions.
    Duration elapsed{};
    /// Number of distinct episode transitions collapsed into this edge.
    std::size_t multiplicity = 1;

    std::string label() const;
    bool operator==(const AttackGraphEdge&) const = default;
};

struct ObjectiveAttackGraph {
    std::string victim_ip;
    Micro micro = Micro::Unknown;
    std::string service;
    std::vector<AttackGraphNode> nodes;
    std::vector<AttackGraphEdge> edges;
    std::vector<AttackPath> paths;
    std::set<std::string> attackers;
};

/// Union of all objective graphs with nodes merged by key and every
/// objective linked to a single artificial root. Nodes and edges are kept
/// sorted, so equal inputs produce equal graphs.
struct GlobalAttackGraph {
    std::vector<AttackGraphNode> nodes;
    std::vector<AttackGraphEdge> edges;
    std::vector<AttackPath> paths;

    const AttackGraphNode* find(const NodeKey& key) const;
    /// Nodes other than the root: the node set scored by the urgency module.
    std::vector<const AttackGraphNode*> scored_nodes() const;

    bool operator==(const GlobalAttackGraph&) const = default;
};

struct FilterSpec {
    std::optional<std::string> attacker_ip;
    std::optional<std::string> victim_ip;
    std::optional<std::string> service;
    std::optional<Micro> micro;
    std::optional<Timestamp> from;
    std::optional<Timestamp> to;

    bool empty() const noexcept {
        return !attacker_ip && !victim_ip && !service && !micro && !from && !to;
    }
    /// Path-level test: host fields compare with the path's pair; micro and
    /// service must be met by a single step when both are set; the time
    /// window needs one step whose [start, end] intersects it.
    bool matches(const AttackPath& path) const;

    bool operator==(const FilterSpec&) const = default;
};

/// Every High severity episode yields one path: the sequence prefix ending
/// there. Path ids follow sequence order, then position.
std::vector<AttackPath> extract_objective_paths(std::span<const EpisodeSequence> sequences);

/// Paths grouped by (victim, objective micro, objective service), ordered by
/// that key.
std::vector<ObjectiveAttackGraph> build_objective_graphs(std::span<const EpisodeSequence> sequences);

GlobalAttackGraph build_global_graph(std::span<const ObjectiveAttackGraph> graphs);

/// Assembles a global graph directly from paths.
GlobalAttackGraph assemble_global_graph(std::vector<AttackPath> paths);

/// Rebuilds the graph from the paths that satisfy `f`. An empty filter returns
/// the graph unchanged; a filter nothing satisfies yields the root alone.
GlobalAttackGraph filter_graph(const GlobalAttackGraph& g, const FilterSpec& f);

/// Zero-padded "HH:MM:SS", sub-second part truncated. Throws
/// ValidationError for negative or non-finite input.
std::string elapsed_label(double seconds);
std::string elapsed_label(Duration elapsed);

}  // namespace alertgraph
