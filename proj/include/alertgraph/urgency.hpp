#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "alertgraph/ais.hpp"
#include "alertgraph/episodes.hpp"
#include "alertgraph/graph.hpp"

namespace alertgraph {

enum class UrgencyClass { Zero, Minor, Major, Critical };

std::string_view to_string(UrgencyClass c) noexcept;

/// Half-open [lower, upper); the critical range also includes its upper
/// bound so that a score of exactly 1 is classified.
struct UrgencyRange {
    double lower = 0.0;
    double upper = 0.0;

    bool operator==(const UrgencyRange&) const = default;
};

struct UrgencyRanges {
    UrgencyRange minor{0.0, 0.05};
    UrgencyRange major{0.05, 0.2};
    UrgencyRange critical{0.2, 1.0};

    /// The three ranges must tile [0, 1] in order. Throws ConfigError.
    void validate() const;

    bool operator==(const UrgencyRanges&) const = default;
};

struct UrgencyConfig {
    SeverityTable levels = default_severity_table();
    std::array<double, kSeverityCount> weights{0.25, 0.5, 1.0};  // Low, Medium, High
    UrgencyRanges ranges;

    Severity level_of(Micro m) const noexcept { return levels[index_of(m)]; }
    double weight_of(Micro m) const noexcept { return weights[index_of(level_of(m))]; }

    /// Weights in [0, 1] and valid ranges. Throws ConfigError.
    void validate() const;

    bool operator==(const UrgencyConfig&) const = default;
};

/// Document form: {"severity_levels": {micro: level}, "severity_weights":
/// {level: weight}, "urgency_ranges": {"minor": [lo, hi], ...}}. Reading
/// starts from the defaults, so partial documents are accepted; unknown
/// names raise ConfigError.
nlohmann::json to_json(const UrgencyConfig& c);
UrgencyConfig urgency_config_from_json(const nlohmann::json& j);

/// Count(N, micro) / |N|. Throws EmptyNodeSetError for an empty N.
double normalized_prevalence(std::span<const Micro> node_micros, Micro micro);

/// severity_weight(micro) * normalized_prevalence(micro).
double urgency_score(Micro micro, const UrgencyConfig& config, std::span<const Micro> node_micros);

/// Never returns Zero; that class is assigned by the matrix for absent
/// stages. Throws ConfigError for invalid ranges and ValidationError for a
/// score outside [0, 1].
UrgencyClass classify_urgency(double score, const UrgencyRanges& ranges);

struct MatrixCell {
    Micro micro = Micro::Unknown;
    Macro macro = Macro::Unknown;
    double urgency_score = 0.0;
    UrgencyClass urgency_class = UrgencyClass::Zero;
    /// Raw alerts summed over the episodes behind this micro's nodes.
    std::size_t alert_count = 0;
    std::size_t node_count = 0;
    Severity severity_level = Severity::Low;
    double severity_weight = 0.0;

    bool operator==(const MatrixCell&) const = default;
};

struct MatrixColumn {
    Macro macro = Macro::Unknown;
    std::vector<MatrixCell> cells;  // micros in alphabetical order

    bool operator==(const MatrixColumn&) const = default;
};

struct RecommenderMatrix {
    std::vector<MatrixColumn> columns;  // fixed macro order
    std::size_t node_total = 0;
    bool empty_node_set = false;

    const MatrixCell& cell(Micro m) const;
    /// All cells by urgency score, descending; ties by micro name.
    std::vector<MatrixCell> ranked() const;

    bool operator==(const RecommenderMatrix&) const = default;
};

/// Scores every micro over the non-root nodes of filter_graph(g, filter).
/// `episodes` must contain every episode the graph refers to. Throws
/// EmptyNodeSetError if the filtered node set is empty.
RecommenderMatrix build_matrix(const GlobalAttackGraph& g, std::span<const Episode> episodes,
                               const UrgencyConfig& config, const FilterSpec& filter = {});

/// Matrix with every cell in the Zero class and `empty_node_set` set.
RecommenderMatrix empty_matrix(const UrgencyConfig& config);

nlohmann::json to_json(const RecommenderMatrix& m);

/// The live urgency configuration. Readers get an immutable snapshot;
/// updates validate first and then replace the whole document at once.
class UrgencySettings {
public:
    explicit UrgencySettings(UrgencyConfig initial = {});

    std::shared_ptr<const UrgencyConfig> current() const;
    /// Throws ConfigError, leaving the current config in place.
    UrgencyConfig update(UrgencyConfig next);

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const UrgencyConfig> config_;
};

}  // namespace alertgraph
