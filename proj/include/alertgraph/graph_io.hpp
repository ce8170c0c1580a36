#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "alertgraph/graph.hpp"
#include "alertgraph/layout.hpp"

namespace alertgraph {

enum class GraphFormat { GraphvizText, StructuredGraph };

/// "dot"/"graphviz" or "json"/"structured". Throws ValidationError otherwise.
GraphFormat parse_graph_format(std::string_view name);

struct GraphDocumentOptions {
    std::optional<LayoutMethod> layout;
    /// Nodes with this micro carry `"highlight": true`.
    std::optional<Micro> highlight;
};

/// Structured graph document (schema "alertgraph.graph.v1", documented in
/// docs/formats.md). Deterministic: equal graphs give equal documents.
nlohmann::json graph_document(const GlobalAttackGraph& g, const GraphDocumentOptions& options = {});

std::string export_graph(const GlobalAttackGraph& g, GraphFormat format, const GraphDocumentOptions& options = {});

/// Inverse of the structured export. Layout and highlight annotations are
/// ignored. Throws FormatError on malformed documents.
GlobalAttackGraph import_structured_graph(std::string_view text);

/// Fill color used for a macro stage in Graphviz output.
std::string_view macro_color(Macro m) noexcept;

}  // namespace alertgraph
