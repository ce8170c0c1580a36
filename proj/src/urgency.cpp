#include "alertgraph/urgency.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "alertgraph/errors.hpp"

namespace alertgraph {
namespace {

using nlohmann::json;

void check_range(const UrgencyRange& r, std::string_view name) {
    if (!std::isfinite(r.lower) || !std::isfinite(r.upper) || r.lower > r.upper)
        throw ConfigError(std::string(name) + " range is not a valid interval");
}

UrgencyRange range_from_json(const json& j, std::string_view name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(name) + " range must be [lower, upper]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string_view to_string(UrgencyClass c) noexcept {
    switch (c) {
        case UrgencyClass::Zero: return "Zero";
        case UrgencyClass::Minor: return "Minor";
        case UrgencyClass::Major: return "Major";
        case UrgencyClass::Critical: return "Critical";
    }
    return "Zero";
}

void UrgencyRanges::validate() const {
    check_range(minor, "minor");
    check_range(major, "major");
    check_range(critical, "critical");
    if (minor.lower != 0.0) throw ConfigError("minor range must start at 0");
    if (minor.upper != major.lower) throw ConfigError("minor and major ranges must meet without gap or overlap");
    if (major.upper != critical.lower)
        throw ConfigError("major and critical ranges must meet without gap or overlap");
    if (critical.upper != 1.0) throw ConfigError("critical range must end at 1");
}

void UrgencyConfig::validate() const {
    for (std::size_t i = 0; i < kSeverityCount; ++i) {
        const double w = weights[i];
        if (!std::isfinite(w) || w < 0.0 || w > 1.0)
            throw ConfigError("severity weight for " + std::string(to_string(static_cast<Severity>(i))) +
                              " must lie in [0, 1]");
    }
    ranges.validate();
}

json to_json(const UrgencyConfig& c) {
    json levels = json::object();
    for (auto m : all_micros()) levels[std::string(to_string(m))] = std::string(to_string(c.level_of(m)));
    json weights = json::object();
    for (std::size_t i = 0; i < kSeverityCount; ++i)
        weights[std::string(to_string(static_cast<Severity>(i)))] = c.weights[i];
    return json{
        {"severity_levels", levels},
        {"severity_weights", weights},
        {"urgency_ranges",
         {{"minor", {c.ranges.minor.lower, c.ranges.minor.upper}},
          {"major", {c.ranges.major.lower, c.ranges.major.upper}},
          {"critical", {c.ranges.critical.lower, c.ranges.critical.upper}}}},
    };
}

UrgencyConfig urgency_config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config document must be an object");
    static const std::array<std::string_view, 3> known{"severity_levels", "severity_weights", "urgency_ranges"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config field '" + key + "'");

    UrgencyConfig c;
    if (const auto it = j.find("severity_levels"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("severity_levels must be an object");
        for (const auto& [name, value] : it->items()) {
            const auto micro = parse_micro(name);
            if (!micro) throw ConfigError("unknown micro stage '" + name + "'");
            const auto level = value.is_string() ? parse_severity(value.get<std::string>()) : std::nullopt;
            if (!level) throw ConfigError("invalid severity level for '" + name + "'");
            c.levels[index_of(*micro)] = *level;
        }
    }
    if (const auto it = j.find("severity_weights"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("severity_weights must be an object");
        for (const auto& [name, value] : it->items()) {
            const auto level = parse_severity(name);
            if (!level) throw ConfigError("unknown severity level '" + name + "'");
            if (!value.is_number()) throw ConfigError("weight for '" + name + "' must be a number");
            c.weights[index_of(*level)] = value.get<double>();
        }
    }
    if (const auto it = j.find("urgency_ranges"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("urgency_ranges must be an object");
        for (const auto& [name, value] : it->items()) {
            if (name == "minor")
                c.ranges.minor = range_from_json(value, name);
            else if (name == "major")
                c.ranges.major = range_from_json(value, name);
            else if (name == "critical")
                c.ranges.critical = range_from_json(value, name);
            else
                throw ConfigError("unknown urgency range '" + name + "'");
        }
    }
    c.validate();
    return c;
}

double normalized_prevalence(std::span<const Micro> node_micros, Micro micro) {
    if (node_micros.empty()) throw EmptyNodeSetError();
    const auto count = std::count(node_micros.begin(), node_micros.end(), micro);
    return static_cast<double>(count) / static_cast<double>(node_micros.size());
}

double urgency_score(Micro micro, const UrgencyConfig& config, std::span<const Micro> node_micros) {
    return config.weight_of(micro) * normalized_prevalence(node_micros, micro);
}

UrgencyClass classify_urgency(double score, const UrgencyRanges& ranges) {
    ranges.validate();
    if (!(score >= 0.0 && score <= 1.0)) throw ValidationError("urgency score must lie in [0, 1]");
    if (score < ranges.minor.upper) return UrgencyClass::Minor;
    if (score < ranges.major.upper) return UrgencyClass::Major;
    return UrgencyClass::Critical;
}

const MatrixCell& RecommenderMatrix::cell(Micro m) const {
    for (const auto& col : columns)
        for (const auto& c : col.cells)
            if (c.micro == m) return c;
    throw NotFound("no matrix cell for " + std::string(to_string(m)));
}

std::vector<MatrixCell> RecommenderMatrix::ranked() const {
    std::vector<MatrixCell> out;
    for (const auto& col : columns) out.insert(out.end(), col.cells.begin(), col.cells.end());
    std::stable_sort(out.begin(), out.end(), [](const MatrixCell& a, const MatrixCell& b) {
        if (a.urgency_score != b.urgency_score) return a.urgency_score > b.urgency_score;
        return to_string(a.micro) < to_string(b.micro);
    });
    return out;
}

namespace {

RecommenderMatrix skeleton(const UrgencyConfig& config) {
    RecommenderMatrix m;
    for (auto macro : all_macros()) {
        MatrixColumn col;
        col.macro = macro;
        for (auto micro : all_micros()) {
            if (macro_of(micro) != macro) continue;
            MatrixCell c;
            c.micro = micro;
            c.macro = macro;
            c.severity_level = config.level_of(micro);
            c.severity_weight = config.weight_of(micro);
            col.cells.push_back(c);
        }
        std::sort(col.cells.begin(), col.cells.end(),
                  [](const MatrixCell& a, const MatrixCell& b) { return to_string(a.micro) < to_string(b.micro); });
        m.columns.push_back(std::move(col));
    }
    return m;
}

}  // namespace

RecommenderMatrix build_matrix(const GlobalAttackGraph& g, std::span<const Episode> episodes,
                               const UrgencyConfig& config, const FilterSpec& filter) {
    config.validate();
    const auto filtered = filter.empty() ? GlobalAttackGraph{} : filter_graph(g, filter);
    const auto& graph = filter.empty() ? g : filtered;

    const auto nodes = graph.scored_nodes();
    if (nodes.empty()) throw EmptyNodeSetError();

    std::unordered_map<std::size_t, std::size_t> alerts_by_episode;
    for (const auto& e : episodes) alerts_by_episode[e.id] = e.alert_count;

    std::vector<Micro> micros;
    std::array<std::size_t, kMicroCount> node_counts{};
    std::array<std::size_t, kMicroCount> alert_counts{};
    micros.reserve(nodes.size());
    for (const auto* n : nodes) {
        micros.push_back(n->key.micro);
        ++node_counts[index_of(n->key.micro)];
        for (auto ref : n->episode_refs) {
            const auto it = alerts_by_episode.find(ref);
            if (it == alerts_by_episode.end())
                throw NotFound("episode " + std::to_string(ref) + " referenced by the graph is missing");
            alert_counts[index_of(n->key.micro)] += it->second;
        }
    }

    auto m = skeleton(config);
    m.node_total = nodes.size();
    for (auto& col : m.columns) {
        for (auto& c : col.cells) {
            c.node_count = node_counts[index_of(c.micro)];
            c.alert_count = alert_counts[index_of(c.micro)];
            c.urgency_score = urgency_score(c.micro, config, micros);
            c.urgency_class = (c.urgency_score == 0.0 && c.node_count == 0)
                                  ? UrgencyClass::Zero
                                  : classify_urgency(c.urgency_score, config.ranges);
        }
    }
    return m;
}

RecommenderMatrix empty_matrix(const UrgencyConfig& config) {
    auto m = skeleton(config);
    m.empty_node_set = true;
    return m;
}

json to_json(const RecommenderMatrix& m) {
    json columns = json::array();
    for (const auto& col : m.columns) {
        json cells = json::array();
        for (const auto& c : col.cells)
            cells.push_back(json{
                {"micro", std::string(to_string(c.micro))},
                {"macro", std::string(to_string(c.macro))},
                {"urgency_score", c.urgency_score},
                {"urgency_class", std::string(to_string(c.urgency_class))},
                {"alert_count", c.alert_count},
                {"node_count", c.node_count},
                {"severity_level", std::string(to_string(c.severity_level))},
                {"severity_weight", c.severity_weight},
            });
        columns.push_back(json{{"macro", std::string(to_string(col.macro))}, {"cells", cells}});
    }
    return json{
        {"schema", "alertgraph.matrix.v1"},
        {"node_total", m.node_total},
        {"empty_node_set", m.empty_node_set},
        {"columns", columns},
    };
}

UrgencySettings::UrgencySettings(UrgencyConfig initial) {
    initial.validate();
    config_ = std::make_shared<const UrgencyConfig>(std::move(initial));
}

std::shared_ptr<const UrgencyConfig> UrgencySettings::current() const {
    std::lock_guard lock(mutex_);
    return config_;
}

UrgencyConfig UrgencySettings::update(UrgencyConfig next) {
    next.validate();
    auto replacement = std::make_shared<const UrgencyConfig>(std::move(next));
    std::lock_guard lock(mutex_);
    config_ = replacement;
    return *config_;
}

}  // namespace alertgraph
