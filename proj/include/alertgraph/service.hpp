#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "alertgraph/graph_io.hpp"
#include "alertgraph/pipeline.hpp"
#include "alertgraph/store.hpp"
#include "alertgraph/urgency.hpp"

namespace alertgraph {

inline constexpr std::string_view kVersion = "0.3.0";
inline constexpr std::size_t kSignaturePageSize = 100;

enum class Perspective { Attacker, Victim };

std::optional<Perspective> parse_perspective(std::string_view text);

/// Cross-view navigation request (timeline or matrix -> graph).
struct RedirectQuery {
    std::optional<std::string> attacker_ip;
    std::optional<std::string> victim_ip;
    std::optional<std::string> service;
    std::optional<Micro> micro;
    std::optional<Timestamp> from;
    std::optional<Timestamp> to;

    FilterSpec to_filter() const { return {attacker_ip, victim_ip, service, micro, from, to}; }
};

using QueryParams = std::multimap<std::string, std::string>;

/// Reads attacker/victim/service/micro/start/end into a FilterSpec. Any key
/// outside those and `extra_allowed` is rejected, as are malformed values
/// (ValidationError).
FilterSpec filter_from_params(const QueryParams& params, std::initializer_list<std::string_view> extra_allowed = {});

struct ServiceOptions {
    AisMapping mapping = AisMapping::builtin();
    PortServiceTable ports = PortServiceTable::builtin();
    AnalysisOptions defaults;
};

struct UploadResult {
    RunInfo run;
    bool existing = false;
};

/// Transport independent API: every view document the HTTP layer and the
/// CLI serve. Requests are fully parameterized; the only mutable state is
/// the urgency config.
class Service {
public:
    explicit Service(Store& store, ServiceOptions options = {});

    /// Runs the pipeline and persists the result. Identical bytes with
    /// identical options resolve to the stored run. Throws ValidationError
    /// for an empty body and FormatError/RecordError for bad input.
    UploadResult upload(std::string_view bytes, const std::string& filename,
                        std::optional<AnalysisOptions> options = std::nullopt);

    std::shared_ptr<const Analysis> analysis(std::int64_t run_id) const;

    nlohmann::json health() const;
    nlohmann::json runs() const;
    nlohmann::json run(std::int64_t run_id) const;

    nlohmann::json graph(std::int64_t run_id, const FilterSpec& filter,
                         LayoutMethod layout = LayoutMethod::Directed) const;
    nlohmann::json redirect_to_graph(std::int64_t run_id, const RedirectQuery& query,
                                     LayoutMethod layout = LayoutMethod::Directed) const;
    std::string export_graph(std::int64_t run_id, GraphFormat format, const FilterSpec& filter,
                             std::optional<LayoutMethod> layout = std::nullopt) const;

    nlohmann::json timeline(std::int64_t run_id, Perspective perspective,
                            const std::optional<std::string>& host = std::nullopt,
                            std::optional<Timestamp> from = std::nullopt,
                            std::optional<Timestamp> to = std::nullopt) const;

    /// An empty filtered node set yields a Zero matrix with
    /// `empty_node_set: true` instead of an error.
    nlohmann::json matrix(std::int64_t run_id, const FilterSpec& filter) const;

    nlohmann::json signature_table(std::int64_t run_id, const NodeKey& node,
                                   SignatureColumn sort = SignatureColumn::Start, bool descending = false,
                                   std::size_t page = 1) const;
    std::string signature_table_tsv(std::int64_t run_id, const NodeKey& node,
                                    SignatureColumn sort = SignatureColumn::Start, bool descending = false) const;

    nlohmann::json config() const;
    /// Validates, persists, then swaps in the new config. Throws ConfigError
    /// with the previous config still active.
    nlohmann::json put_config(const nlohmann::json& document);

    const ServiceOptions& options() const noexcept { return options_; }

private:
    Store& store_;
    ServiceOptions options_;
    UrgencySettings settings_;
    std::mutex upload_mutex_;
    std::mutex config_mutex_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::int64_t, std::shared_ptr<const Analysis>> cache_;
};

}  // namespace alertgraph
