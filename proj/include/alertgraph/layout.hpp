#pragma once

#include <map>
#include <optional>
#include <string_view>

#include "alertgraph/graph.hpp"

namespace alertgraph {

enum class LayoutMethod { Directed, Hubsize };

std::optional<LayoutMethod> parse_layout_method(std::string_view text);
std::string_view to_string(LayoutMethod m) noexcept;

/// Hierarchical level per node.
///
/// Directed: longest-path depth from the source nodes, computed on the
/// condensation of the graph so that repeated stage visits (cycles) share a
/// level. Hubsize: nodes ranked by total degree, descending, ties by key;
/// the rank is the level.
std::map<NodeKey, int> assign_layout_levels(const GlobalAttackGraph& g, LayoutMethod method);

}  // namespace alertgraph
