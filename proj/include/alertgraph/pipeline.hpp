#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "alertgraph/alert.hpp"
#include "alertgraph/context_model.hpp"
#include "alertgraph/episodes.hpp"
#include "alertgraph/graph.hpp"
#include "alertgraph/urgency.hpp"

namespace alertgraph {

struct AnalysisOptions {
    Duration gap_threshold = kDefaultGapThreshold;
    std::size_t merge_min_count = kDefaultMergeMinCount;
    ParsePolicy policy = ParsePolicy::Skip;

    void validate() const;
    bool operator==(const AnalysisOptions&) const = default;
};

nlohmann::json to_json(const AnalysisOptions& o);
AnalysisOptions analysis_options_from_json(const nlohmann::json& j);

/// Everything derived from one alert file.
struct Analysis {
    std::vector<NormalizedAlert> alerts;
    std::size_t skipped = 0;
    std::vector<Episode> episodes;  // index == id, context ids assigned
    GlobalAttackGraph graph;
    std::size_t objective_graph_count = 0;
    UrgencyConfig config;  // the config the episodes were classified with
    AnalysisOptions options;

    bool operator==(const Analysis&) const = default;
};

/// parse -> mine episodes -> context ids -> objective graphs -> global graph.
Analysis analyze(std::string_view raw, const AnalysisOptions& options = {}, const UrgencyConfig& config = {},
                 const AisMapping& mapping = AisMapping::builtin(),
                 const PortServiceTable& ports = PortServiceTable::builtin());

/// One row per (episode, signature) behind a graph node.
struct SignatureRow {
    std::string signature;
    Timestamp start{};
    Timestamp end{};
    std::string attacker_ip;
    std::string victim_ip;
    std::size_t frequency = 0;
    std::size_t episode_id = 0;

    bool operator==(const SignatureRow&) const = default;
};

enum class SignatureColumn { Signature, Start, End, Attacker, Victim, Frequency };

std::optional<SignatureColumn> parse_signature_column(std::string_view name);

/// Rows ordered by episode id, then signature. Throws NotFound if the node is
/// not in the graph.
std::vector<SignatureRow> node_signature_table(const GlobalAttackGraph& g, std::span<const Episode> episodes,
                                               const NodeKey& node);

/// Stable sort on one column.
void sort_signature_rows(std::vector<SignatureRow>& rows, SignatureColumn column, bool descending);

/// Tab separated with a header line. Tabs and newlines inside fields are
/// replaced by spaces.
std::string signature_table_tsv(std::span<const SignatureRow> rows);

nlohmann::json to_json(const SignatureRow& row);

}  // namespace alertgraph
