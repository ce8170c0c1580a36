#include "alertgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <tuple>

#include "alertgraph/errors.hpp"

namespace alertgraph {
namespace {

constexpr std::size_t kRootEpisode = std::numeric_limits<std::size_t>::max();

using EdgeId = std::tuple<NodeKey, NodeKey, std::string, std::string>;

struct EdgeAccumulator {
    Duration elapsed = Duration::max();
    std::set<std::pair<std::size_t, std::size_t>> transitions;
};

struct GraphParts {
    std::vector<AttackGraphNode> nodes;
    std::vector<AttackGraphEdge> edges;
};

GraphParts assemble(std::span<const AttackPath> paths, bool with_root) {
    std::map<NodeKey, AttackGraphNode> nodes;
    std::map<EdgeId, EdgeAccumulator> edges;

    auto touch = [&](const PathStep& step) -> AttackGraphNode& {
        auto [it, inserted] = nodes.try_emplace(step.node);
        auto& n = it->second;
        if (inserted) {
            n.key = step.node;
            n.macro = macro_of(step.node.micro);
            n.severity = step.severity;
            n.shape = shape_for(step.severity);
        }
        n.episode_refs.push_back(step.episode_id);
        return n;
    };

    auto link = [&](const NodeKey& from, const NodeKey& to, const AttackPath& p, Duration elapsed,
                    std::size_t from_episode, std::size_t to_episode) {
        auto& acc = edges[{from, to, p.attacker_ip, p.victim_ip}];
        acc.elapsed = std::min(acc.elapsed, elapsed);
        acc.transitions.emplace(from_episode, to_episode);
    };

    for (const auto& p : paths) {
        if (p.steps.empty()) continue;
        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            const auto& step = p.steps[i];
            auto& n = touch(step);
            if (i == 0) n.is_start = true;
            if (i + 1 == p.steps.size()) n.is_end = true;
            if (i > 0) {
                const auto& prev = p.steps[i - 1];
                link(prev.node, step.node, p, std::max(Duration::zero(), step.start - prev.end), prev.episode_id,
                     step.episode_id);
            }
        }
        if (with_root) link(p.objective().node, NodeKey::root(), p, Duration::zero(), p.objective().episode_id,
                            kRootEpisode);
    }

    GraphParts out;
    if (with_root) {
        AttackGraphNode root;
        root.key = NodeKey::root();
        nodes.emplace(root.key, root);
    }
    out.nodes.reserve(nodes.size());
    for (auto& [key, n] : nodes) {
        std::sort(n.episode_refs.begin(), n.episode_refs.end());
        n.episode_refs.erase(std::unique(n.episode_refs.begin(), n.episode_refs.end()), n.episode_refs.end());
        out.nodes.push_back(std::move(n));
    }
    out.edges.reserve(edges.size());
    for (auto& [id, acc] : edges) {
        AttackGraphEdge e;
        std::tie(e.from, e.to, e.attacker_ip, e.victim_ip) = id;
        e.elapsed = acc.elapsed;
        e.multiplicity = acc.transitions.size();
        out.edges.push_back(std::move(e));
    }
    return out;
}

bool step_matches(const PathStep& s, const FilterSpec& f) {
    if (f.micro && s.node.micro != *f.micro) return false;
    if (f.service && s.node.service != *f.service) return false;
    return true;
}

bool step_in_window(const PathStep& s, const FilterSpec& f) {
    if (f.from && s.end < *f.from) return false;
    if (f.to && s.start > *f.to) return false;
    return true;
}

}  // namespace

NodeShape shape_for(Severity s) noexcept {
    switch (s) {
        case Severity::Low: return NodeShape::Ellipse;
        case Severity::Medium: return NodeShape::Box;
        case Severity::High: return NodeShape::Hexagon;
    }
    return NodeShape::Ellipse;
}

std::string_view to_string(NodeShape s) noexcept {
    switch (s) {
        case NodeShape::Ellipse: return "ellipse";
        case NodeShape::Box: return "box";
        case NodeShape::Hexagon: return "hexagon";
    }
    return "ellipse";
}

std::string NodeKey::label() const {
    if (is_root()) return "root";
    return std::string(to_string(micro)) + "|" + service + "|" + std::to_string(context_id);
}

std::optional<NodeKey> NodeKey::parse(std::string_view label) {
    if (label == "root") return root();
    const auto first = label.find('|');
    const auto last = label.rfind('|');
    if (first == std::string_view::npos || first == last) return std::nullopt;
    const auto micro = parse_micro(label.substr(0, first));
    const auto service = label.substr(first + 1, last - first - 1);
    const auto ctx_text = label.substr(last + 1);
    if (!micro || service.empty() || ctx_text.empty()) return std::nullopt;
    int ctx = 0;
    for (char c : ctx_text) {
        if (c < '0' || c > '9' || ctx > 100000000) return std::nullopt;
        ctx = ctx * 10 + (c - '0');
    }
    return NodeKey{*micro, std::string(service), ctx};
}

NodeKey key_of(const Episode& e) { return {e.micro, e.service, e.context_id}; }

std::string AttackGraphEdge::label() const { return elapsed_label(elapsed); }

const AttackGraphNode* GlobalAttackGraph::find(const NodeKey& key) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), key,
                                     [](const AttackGraphNode& n, const NodeKey& k) { return n.key < k; });
    return it != nodes.end() && it->key == key ? &*it : nullptr;
}

std::vector<const AttackGraphNode*> GlobalAttackGraph::scored_nodes() const {
    std::vector<const AttackGraphNode*> out;
    for (const auto& n : nodes)
        if (!n.is_root()) out.push_back(&n);
    return out;
}

bool FilterSpec::matches(const AttackPath& path) const {
    if (attacker_ip && path.attacker_ip != *attacker_ip) return false;
    if (victim_ip && path.victim_ip != *victim_ip) return false;
    if ((micro || service) &&
        std::none_of(path.steps.begin(), path.steps.end(), [&](const PathStep& s) { return step_matches(s, *this); }))
        return false;
    if ((from || to) && std::none_of(path.steps.begin(), path.steps.end(),
                                     [&](const PathStep& s) { return step_in_window(s, *this); }))
        return false;
    return true;
}

std::vector<AttackPath> extract_objective_paths(std::span<const EpisodeSequence> sequences) {
    std::vector<AttackPath> paths;
    for (const auto& seq : sequences) {
        for (std::size_t i = 0; i < seq.episodes.size(); ++i) {
            if (seq.episodes[i].severity != Severity::High) continue;
            AttackPath p;
            p.id = paths.size();
            p.attacker_ip = seq.attacker_ip;
            p.victim_ip = seq.victim_ip;
            p.steps.reserve(i + 1);
            for (std::size_t j = 0; j <= i; ++j) {
                const auto& e = seq.episodes[j];
                p.steps.push_back({key_of(e), e.id, e.severity, e.start, e.end});
            }
            paths.push_back(std::move(p));
        }
    }
    return paths;
}

std::vector<ObjectiveAttackGraph> build_objective_graphs(std::span<const EpisodeSequence> sequences) {
    std::map<std::tuple<std::string, Micro, std::string>, std::vector<AttackPath>> grouped;
    for (auto& p : extract_objective_paths(sequences)) {
        const auto& obj = p.objective().node;
        grouped[{p.victim_ip, obj.micro, obj.service}].push_back(std::move(p));
    }

    std::vector<ObjectiveAttackGraph> graphs;
    graphs.reserve(grouped.size());
    for (auto& [key, paths] : grouped) {
        ObjectiveAttackGraph g;
        std::tie(g.victim_ip, g.micro, g.service) = key;
        auto parts = assemble(paths, false);
        g.nodes = std::move(parts.nodes);
        g.edges = std::move(parts.edges);
        for (const auto& p : paths) g.attackers.insert(p.attacker_ip);
        g.paths = std::move(paths);
        graphs.push_back(std::move(g));
    }
    return graphs;
}

GlobalAttackGraph assemble_global_graph(std::vector<AttackPath> paths) {
    std::sort(paths.begin(), paths.end(), [](const AttackPath& a, const AttackPath& b) { return a.id < b.id; });
    auto parts = assemble(paths, true);
    return {std::move(parts.nodes), std::move(parts.edges), std::move(paths)};
}

GlobalAttackGraph build_global_graph(std::span<const ObjectiveAttackGraph> graphs) {
    std::vector<AttackPath> paths;
    for (const auto& g : graphs) paths.insert(paths.end(), g.paths.begin(), g.paths.end());
    return assemble_global_graph(std::move(paths));
}

GlobalAttackGraph filter_graph(const GlobalAttackGraph& g, const FilterSpec& f) {
    if (f.empty()) return g;
    std::vector<AttackPath> kept;
    for (const auto& p : g.paths)
        if (f.matches(p)) kept.push_back(p);
    return assemble_global_graph(std::move(kept));
}

std::string elapsed_label(double seconds) {
    if (!std::isfinite(seconds) || seconds < 0) throw ValidationError("elapsed time must be a non-negative number");
    const auto whole = static_cast<long long>(std::floor(seconds));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", whole / 3600, (whole / 60) % 60, whole % 60);
    return buf;
}

std::string elapsed_label(Duration elapsed) {
    if (elapsed < Duration::zero()) throw ValidationError("elapsed time must be non-negative");
    const auto whole = std::chrono::duration_cast<std::chrono::seconds>(elapsed).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", static_cast<long long>(whole / 3600),
                  static_cast<long long>((whole / 60) % 60), static_cast<long long>(whole % 60));
    return buf;
}

}  // namespace alertgraph
