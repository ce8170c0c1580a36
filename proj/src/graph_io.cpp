#include "alertgraph/graph_io.hpp"

#include <sstream>

#include "alertgraph/errors.hpp"

namespace alertgraph {
namespace {

using nlohmann::json;

constexpr std::string_view kSchema = "alertgraph.graph.v1";

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string color_class(const AttackGraphNode& n) { return n.is_root() ? "root" : "macro-" + macro_slug(n.macro); }

json node_json(const AttackGraphNode& n) {
    return json{
        {"key", n.key.label()},
        {"micro", n.is_root() ? "" : std::string(to_string(n.key.micro))},
        {"service", n.key.service},
        {"context_id", n.key.context_id},
        {"macro", std::string(to_string(n.macro))},
        {"severity", std::string(to_string(n.severity))},
        {"shape", n.is_root() ? std::string("circle") : std::string(to_string(n.shape))},
        {"color_class", color_class(n)},
        {"is_root", n.is_root()},
        {"is_start", n.is_start},
        {"is_end", n.is_end},
        {"episode_refs", n.episode_refs},
    };
}

json edge_json(const AttackGraphEdge& e) {
    return json{
        {"from", e.from.label()},
        {"to", e.to.label()},
        {"attacker_ip", e.attacker_ip},
        {"victim_ip", e.victim_ip},
        {"elapsed_us", e.elapsed.count()},
        {"label", e.label()},
        {"multiplicity", e.multiplicity},
    };
}

json path_json(const AttackPath& p) {
    json steps = json::array();
    for (const auto& s : p.steps)
        steps.push_back(json{
            {"node", s.node.label()},
            {"episode", s.episode_id},
            {"severity", std::string(to_string(s.severity))},
            {"start", format_rfc3339(s.start)},
            {"end", format_rfc3339(s.end)},
        });
    return json{{"id", p.id}, {"attacker_ip", p.attacker_ip}, {"victim_ip", p.victim_ip}, {"steps", steps}};
}

NodeKey parse_key(const json& j) {
    const auto key = NodeKey::parse(j.get<std::string>());
    if (!key) throw FormatError("bad node key '" + j.get<std::string>() + "'");
    return *key;
}

Severity parse_sev(const json& j) {
    const auto s = parse_severity(j.get<std::string>());
    if (!s) throw FormatError("bad severity '" + j.get<std::string>() + "'");
    return *s;
}

Timestamp parse_ts(const json& j) {
    const auto t = parse_rfc3339(j.get<std::string>());
    if (!t) throw FormatError("bad timestamp '" + j.get<std::string>() + "'");
    return *t;
}

std::string graphviz(const GlobalAttackGraph& g, const GraphDocumentOptions& options) {
    std::optional<std::map<NodeKey, int>> levels;
    if (options.layout) levels = assign_layout_levels(g, *options.layout);

    std::ostringstream out;
    out << "digraph attack_graph {\n";
    out << "  rankdir=TB;\n";
    out << "  node [style=filled, fontname=\"Helvetica\"];\n";
    for (const auto& n : g.nodes) {
        out << "  " << dot_quote(n.key.label()) << " [";
        if (n.is_root()) {
            out << "label=\"root\", shape=circle, fillcolor=\"#ffffff\", class=\"root\"";
        } else {
            const bool highlighted = options.highlight && *options.highlight == n.key.micro;
            std::string top = dot_quote(to_string(n.key.micro));
            std::string bottom = dot_quote(n.key.service + " | " + std::to_string(n.key.context_id));
            top.pop_back();
            out << "label=" << top << "\\n" << bottom.substr(1) << ", shape=" << to_string(n.shape)
                << ", fillcolor=" << dot_quote(highlighted ? "#ffffff" : macro_color(n.macro))
                << ", style=" << dot_quote(n.is_start || n.is_end ? "filled,dotted" : "filled")
                << ", class=" << dot_quote(color_class(n));
        }
        if (levels) out << ", level=" << levels->at(n.key);
        out << "];\n";
    }
    for (const auto& e : g.edges) {
        out << "  " << dot_quote(e.from.label()) << " -> " << dot_quote(e.to.label()) << " [label="
            << dot_quote(e.label()) << ", attacker=" << dot_quote(e.attacker_ip)
            << ", victim=" << dot_quote(e.victim_ip) << ", multiplicity=" << e.multiplicity << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "dot" || name == "graphviz") return GraphFormat::GraphvizText;
    if (name == "json" || name == "structured") return GraphFormat::StructuredGraph;
    throw ValidationError("unknown graph format '" + std::string(name) + "'");
}

std::string_view macro_color(Macro m) noexcept {
    switch (m) {
        case Macro::Reconnaissance: return "#8dd3c7";
        case Macro::InitialAccess: return "#ffffb3";
        case Macro::Execution: return "#bebada";
        case Macro::PrivilegeEscalation: return "#fb8072";
        case Macro::CommandAndControl: return "#80b1d3";
        case Macro::Impact: return "#fdb462";
        case Macro::Exfiltration: return "#b3de69";
        case Macro::Unknown: return "#d9d9d9";
    }
    return "#d9d9d9";
}

json graph_document(const GlobalAttackGraph& g, const GraphDocumentOptions& options) {
    std::optional<std::map<NodeKey, int>> levels;
    if (options.layout) levels = assign_layout_levels(g, *options.layout);

    json nodes = json::array();
    for (const auto& n : g.nodes) {
        auto j = node_json(n);
        if (levels) j["level"] = levels->at(n.key);
        if (options.highlight) j["highlight"] = !n.is_root() && n.key.micro == *options.highlight;
        nodes.push_back(std::move(j));
    }
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back(edge_json(e));
    json paths = json::array();
    for (const auto& p : g.paths) paths.push_back(path_json(p));

    json doc{{"schema", kSchema}, {"nodes", nodes}, {"edges", edges}, {"paths", paths}};
    if (options.layout) doc["layout"] = std::string(to_string(*options.layout));
    if (options.highlight) doc["highlight"] = std::string(to_string(*options.highlight));
    return doc;
}

std::string export_graph(const GlobalAttackGraph& g, GraphFormat format, const GraphDocumentOptions& options) {
    if (format == GraphFormat::GraphvizText) return graphviz(g, options);
    return graph_document(g, options).dump(2) + "\n";
}

GlobalAttackGraph import_structured_graph(std::string_view text) {
    const auto doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw FormatError("graph document is not a JSON object");
    if (doc.value("schema", "") != kSchema) throw FormatError("unsupported graph schema");

    GlobalAttackGraph g;
    try {
        for (const auto& j : doc.at("nodes")) {
            AttackGraphNode n;
            n.key = parse_key(j.at("key"));
            if (n.key.is_root()) {
                n.macro = Macro::Unknown;
            } else {
                const auto macro = parse_macro(j.at("macro").get<std::string>());
                if (!macro) throw FormatError("bad macro");
                n.macro = *macro;
            }
            n.severity = parse_sev(j.at("severity"));
            n.shape = shape_for(n.severity);
            n.is_start = j.at("is_start").get<bool>();
            n.is_end = j.at("is_end").get<bool>();
            n.episode_refs = j.at("episode_refs").get<std::vector<std::size_t>>();
            g.nodes.push_back(std::move(n));
        }
        for (const auto& j : doc.at("edges")) {
            AttackGraphEdge e;
            e.from = parse_key(j.at("from"));
            e.to = parse_key(j.at("to"));
            e.attacker_ip = j.at("attacker_ip").get<std::string>();
            e.victim_ip = j.at("victim_ip").get<std::string>();
            e.elapsed = Duration{j.at("elapsed_us").get<std::int64_t>()};
            e.multiplicity = j.at("multiplicity").get<std::size_t>();
            g.edges.push_back(std::move(e));
        }
        for (const auto& j : doc.at("paths")) {
            AttackPath p;
            p.id = j.at("id").get<std::size_t>();
            p.attacker_ip = j.at("attacker_ip").get<std::string>();
            p.victim_ip = j.at("victim_ip").get<std::string>();
            for (const auto& s : j.at("steps"))
                p.steps.push_back({parse_key(s.at("node")), s.at("episode").get<std::size_t>(),
                                   parse_sev(s.at("severity")), parse_ts(s.at("start")), parse_ts(s.at("end"))});
            g.paths.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed graph document: ") + e.what());
    }
    return g;
}

}  // namespace alertgraph
