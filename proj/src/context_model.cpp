#include "alertgraph/context_model.hpp"

#include <deque>

#include "alertgraph/errors.hpp"

namespace alertgraph {

bool is_context_token(const Episode& e) noexcept { return e.severity != Severity::Low; }

ContextToken token_of(const Episode& e) { return {e.micro, e.service}; }

SuffixModel::SuffixModel(std::size_t merge_min_count) : merge_min_count_(merge_min_count) {
    if (merge_min_count_ == 0) throw ValidationError("merge_min_count must be at least 1");
    nodes_.emplace_back();
}

SuffixModel SuffixModel::build(std::span<const EpisodeSequence> sequences, std::size_t merge_min_count) {
    SuffixModel model(merge_min_count);
    std::vector<ContextToken> reversed;
    for (const auto& seq : sequences) {
        reversed.clear();
        for (auto it = seq.episodes.rbegin(); it != seq.episodes.rend(); ++it)
            if (is_context_token(*it)) reversed.push_back(token_of(*it));
        model.insert(reversed);
    }
    model.number_contexts();
    return model;
}

std::optional<std::size_t> SuffixModel::child(std::size_t node, const ContextToken& token) const {
    const auto& children = nodes_.at(node).children;
    const auto it = children.find(token);
    if (it == children.end()) return std::nullopt;
    return it->second;
}

void SuffixModel::insert(std::span<const ContextToken> reversed_tokens) {
    std::size_t cur = kRoot;
    ++nodes_[cur].count;
    for (const auto& token : reversed_tokens) {
        auto it = nodes_[cur].children.find(token);
        if (it == nodes_[cur].children.end()) {
            Node n;
            n.token = token;
            n.parent = cur;
            n.depth = nodes_[cur].depth + 1;
            nodes_.push_back(std::move(n));
            it = nodes_[cur].children.emplace(token, nodes_.size() - 1).first;
        }
        cur = it->second;
        ++nodes_[cur].count;
    }
}

void SuffixModel::number_contexts() {
    int next_id = 1;
    context_count_ = 0;
    std::deque<std::size_t> queue;
    for (const auto& [token, idx] : nodes_[kRoot].children) queue.push_back(idx);
    while (!queue.empty()) {
        const auto idx = queue.front();
        queue.pop_front();
        auto& node = nodes_[idx];
        if (node.count >= merge_min_count_) {
            node.context_id = next_id++;
            ++context_count_;
        } else {
            node.context_id = nodes_[node.parent].context_id;
        }
        for (const auto& [token, child_idx] : node.children) queue.push_back(child_idx);
    }
}

std::vector<EpisodeSequence> assign_context_ids(std::span<const EpisodeSequence> sequences,
                                                const SuffixModel& model) {
    std::vector<EpisodeSequence> out(sequences.begin(), sequences.end());
    const auto& nodes = model.nodes();
    for (auto& seq : out) {
        std::optional<std::size_t> cur = SuffixModel::kRoot;
        for (auto it = seq.episodes.rbegin(); it != seq.episodes.rend(); ++it) {
            if (cur && is_context_token(*it)) cur = model.child(*cur, token_of(*it));
            it->context_id = cur ? nodes[*cur].context_id : kUnspecifiedContext;
        }
    }
    return out;
}

}  // namespace alertgraph
