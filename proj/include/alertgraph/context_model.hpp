#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alertgraph/episodes.hpp"

namespace alertgraph {

inline constexpr std::size_t kDefaultMergeMinCount = 5;

/// Context id 0 means "unspecified": the artificial graph root, rare
/// suffixes, and anything the model has not seen.
inline constexpr int kUnspecifiedContext = 0;

struct ContextToken {
    Micro micro = Micro::Unknown;
    std::string service;

    auto operator<=>(const ContextToken&) const = default;
};

/// Prefix tree over reversed episode sequences, so that the path from the
/// root to a tree node spells an episode's suffix (the episode followed by
/// everything the attacker did afterwards). Only Medium and High severity
/// episodes contribute tokens.
///
/// Each node counts the sequences that pass through it. Nodes reaching
/// `merge_min_count` get their own context id, numbered 1, 2, ... in
/// breadth-first order with children visited in token order; the others
/// inherit their parent's id.
class SuffixModel {
public:
    struct Node {
        ContextToken token;
        std::size_t parent = 0;
        std::size_t depth = 0;
        std::size_t count = 0;
        int context_id = kUnspecifiedContext;
        std::map<ContextToken, std::size_t> children;
    };

    static constexpr std::size_t kRoot = 0;

    SuffixModel() : SuffixModel(kDefaultMergeMinCount) {}
    explicit SuffixModel(std::size_t merge_min_count);

    static SuffixModel build(std::span<const EpisodeSequence> sequences,
                             std::size_t merge_min_count = kDefaultMergeMinCount);

    std::optional<std::size_t> child(std::size_t node, const ContextToken& token) const;

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t merge_min_count() const noexcept { return merge_min_count_; }
    /// True when nothing but the root exists.
    bool empty() const noexcept { return nodes_.size() == 1; }
    /// Number of distinct non-zero context ids.
    std::size_t context_count() const noexcept { return context_count_; }

private:
    void insert(std::span<const ContextToken> reversed_tokens);
    void number_contexts();

    std::size_t merge_min_count_;
    std::vector<Node> nodes_;
    std::size_t context_count_ = 0;
};

bool is_context_token(const Episode& e) noexcept;
ContextToken token_of(const Episode& e);

/// Copies of `sequences` with every episode's context_id set. A token
/// episode takes the id of the node reached by its own suffix; a Low episode
/// takes the id of the node reached by the suffix after it. Once the walk
/// leaves the tree, the remaining (earlier) episodes get id 0.
std::vector<EpisodeSequence> assign_context_ids(std::span<const EpisodeSequence> sequences,
                                                const SuffixModel& model);

}  // namespace alertgraph
