#include "alertgraph/layout.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <queue>
#include <string>

namespace alertgraph {
namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Tarjan's algorithm; returns the component index of every vertex.
std::vector<std::size_t> strongly_connected_components(const Adjacency& adj, std::size_t& count) {
    const std::size_t n = adj.size();
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t next_index = 0;
    count = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : adj[v]) {
            if (index[w] == kUnvisited) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = count;
            } while (w != v);
            ++count;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == kUnvisited) visit(v);
    return comp;
}

std::map<NodeKey, int> directed_levels(const GlobalAttackGraph& g) {
    const std::size_t n = g.nodes.size();
    std::map<NodeKey, std::size_t> position;
    for (std::size_t i = 0; i < n; ++i) position[g.nodes[i].key] = i;

    Adjacency adj(n);
    for (const auto& e : g.edges) {
        const auto from = position.find(e.from);
        const auto to = position.find(e.to);
        if (from == position.end() || to == position.end()) continue;
        adj[from->second].push_back(to->second);
    }

    std::size_t comp_count = 0;
    const auto comp = strongly_connected_components(adj, comp_count);

    Adjacency dag(comp_count);
    std::vector<std::size_t> indegree(comp_count, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (auto w : adj[v])
            if (comp[v] != comp[w]) dag[comp[v]].push_back(comp[w]);
    for (auto& out : dag) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        for (auto w : out) ++indegree[w];
    }

    std::vector<int> level(comp_count, 0);
    std::queue<std::size_t> ready;
    for (std::size_t c = 0; c < comp_count; ++c)
        if (indegree[c] == 0) ready.push(c);
    while (!ready.empty()) {
        const auto c = ready.front();
        ready.pop();
        for (auto w : dag[c]) {
            level[w] = std::max(level[w], level[c] + 1);
            if (--indegree[w] == 0) ready.push(w);
        }
    }

    std::map<NodeKey, int> out;
    for (std::size_t v = 0; v < n; ++v) out[g.nodes[v].key] = level[comp[v]];
    return out;
}

std::map<NodeKey, int> hubsize_levels(const GlobalAttackGraph& g) {
    std::map<NodeKey, std::size_t> degree;
    for (const auto& n : g.nodes) degree[n.key] = 0;
    for (const auto& e : g.edges) {
        if (auto it = degree.find(e.from); it != degree.end()) ++it->second;
        if (auto it = degree.find(e.to); it != degree.end()) ++it->second;
    }
    std::vector<std::pair<NodeKey, std::size_t>> ranked(degree.begin(), degree.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::map<NodeKey, int> out;
    for (std::size_t i = 0; i < ranked.size(); ++i) out[ranked[i].first] = static_cast<int>(i);
    return out;
}

}  // namespace

std::optional<LayoutMethod> parse_layout_method(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "directed") return LayoutMethod::Directed;
    if (lower == "hubsize") return LayoutMethod::Hubsize;
    return std::nullopt;
}

std::string_view to_string(LayoutMethod m) noexcept {
    return m == LayoutMethod::Directed ? "directed" : "hubsize";
}

std::map<NodeKey, int> assign_layout_levels(const GlobalAttackGraph& g, LayoutMethod method) {
    return method == LayoutMethod::Directed ? directed_levels(g) : hubsize_levels(g);
}

}  // namespace alertgraph
