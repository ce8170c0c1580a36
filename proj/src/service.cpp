#include "alertgraph/service.hpp"

#include <algorithm>
#include <set>

#include "alertgraph/errors.hpp"

namespace alertgraph {

using nlohmann::json;

namespace {

constexpr std::size_t kTooltipSignatures = 5;

std::string run_key(std::string_view bytes, const AnalysisOptions& options, const UrgencyConfig& config) {
    const json salt{{"options", to_json(options)}, {"severity_levels", to_json(config)["severity_levels"]}};
    return content_digest(bytes) + "@" + content_digest(salt.dump()).substr(0, 16);
}

json segment_json(const Episode& e, Perspective perspective, const GlobalAttackGraph& g) {
    std::vector<std::pair<std::string, std::size_t>> sigs(e.signature_histogram.begin(), e.signature_histogram.end());
    std::stable_sort(sigs.begin(), sigs.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    json tooltip = json::array();
    for (std::size_t i = 0; i < sigs.size() && i < kTooltipSignatures; ++i)
        tooltip.push_back(json{{"signature", sigs[i].first}, {"count", sigs[i].second}});

    const auto key = key_of(e);
    const bool attacker_view = perspective == Perspective::Attacker;
    return json{
        {"episode_id", e.id},
        {"lane", attacker_view ? e.attacker_ip : e.victim_ip},
        {"counterpart", attacker_view ? e.victim_ip : e.attacker_ip},
        {"attacker_ip", e.attacker_ip},
        {"victim_ip", e.victim_ip},
        {"row_label", std::string(to_string(e.micro)) + " | " + e.service},
        {"micro", std::string(to_string(e.micro))},
        {"service", e.service},
        {"context_id", e.context_id},
        {"node_key", key.label()},
        {"in_graph", g.find(key) != nullptr},
        {"macro", std::string(to_string(e.macro))},
        {"color_class", "macro-" + macro_slug(e.macro)},
        {"severity", std::string(to_string(e.severity))},
        {"start_ts", format_rfc3339(e.start)},
        {"end_ts", format_rfc3339(e.end)},
        {"alert_count", e.alert_count},
        {"tooltip", tooltip},
    };
}

}  // namespace

std::optional<Perspective> parse_perspective(std::string_view text) {
    if (text == "attacker") return Perspective::Attacker;
    if (text == "victim") return Perspective::Victim;
    return std::nullopt;
}

FilterSpec filter_from_params(const QueryParams& params, std::initializer_list<std::string_view> extra_allowed) {
    FilterSpec f;
    for (const auto& [key, value] : params) {
        if (key == "attacker") {
            f.attacker_ip = value;
        } else if (key == "victim") {
            f.victim_ip = value;
        } else if (key == "service") {
            if (value.empty()) throw ValidationError("service filter must not be empty");
            f.service = value;
        } else if (key == "micro") {
            f.micro = parse_micro(value);
            if (!f.micro) throw ValidationError("unknown micro stage '" + value + "'");
        } else if (key == "start" || key == "end") {
            const auto ts = parse_rfc3339(value);
            if (!ts) throw ValidationError("invalid timestamp for '" + key + "'");
            (key == "start" ? f.from : f.to) = ts;
        } else if (std::find(extra_allowed.begin(), extra_allowed.end(), key) == extra_allowed.end()) {
            throw ValidationError("unknown query parameter '" + key + "'");
        }
    }
    if (f.from && f.to && *f.from > *f.to) throw ValidationError("start must not be after end");
    return f;
}

Service::Service(Store& store, ServiceOptions options)
    : store_(store), options_(std::move(options)), settings_(store.load_config().value_or(UrgencyConfig{})) {
    options_.defaults.validate();
}

UploadResult Service::upload(std::string_view bytes, const std::string& filename,
                             std::optional<AnalysisOptions> options) {
    if (bytes.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw ValidationError("upload body is empty");
    const auto opts = options.value_or(options_.defaults);
    opts.validate();

    // One pipeline at a time; a concurrent duplicate waits here and then
    // finds the finished run.
    std::lock_guard lock(upload_mutex_);
    const auto config = settings_.current();
    const auto key = run_key(bytes, opts, *config);
    if (auto existing = store_.find_by_digest(key); existing && existing->status == RunStatus::Complete)
        return {*existing, true};

    auto result = std::make_shared<const Analysis>(analyze(bytes, opts, *config, options_.mapping, options_.ports));
    const auto run_id = store_.persist_analysis(filename, key, *result);
    {
        std::lock_guard cache_lock(cache_mutex_);
        cache_[run_id] = result;
    }
    return {store_.run_info(run_id), false};
}

std::shared_ptr<const Analysis> Service::analysis(std::int64_t run_id) const {
    {
        std::lock_guard lock(cache_mutex_);
        if (const auto it = cache_.find(run_id); it != cache_.end()) return it->second;
    }
    auto loaded = std::make_shared<const Analysis>(store_.load_analysis(run_id));
    std::lock_guard lock(cache_mutex_);
    return cache_.try_emplace(run_id, std::move(loaded)).first->second;
}

json Service::health() const {
    return json{{"status", "ok"}, {"version", std::string(kVersion)}, {"runs", store_.complete_run_count()}};
}

json Service::runs() const {
    json out = json::array();
    for (const auto& r : store_.list_runs()) out.push_back(to_json(r));
    return json{{"runs", out}};
}

json Service::run(std::int64_t run_id) const { return to_json(store_.run_info(run_id)); }

json Service::graph(std::int64_t run_id, const FilterSpec& filter, LayoutMethod layout) const {
    const auto a = analysis(run_id);
    auto doc = graph_document(filter_graph(a->graph, filter), {layout, std::nullopt});
    doc["run_id"] = run_id;
    return doc;
}

json Service::redirect_to_graph(std::int64_t run_id, const RedirectQuery& query, LayoutMethod layout) const {
    const auto a = analysis(run_id);
    auto doc = graph_document(filter_graph(a->graph, query.to_filter()), {layout, query.micro});
    doc["run_id"] = run_id;
    doc["highlight_keys"] = json::array();
    if (query.micro)
        for (const auto& n : doc["nodes"])
            if (n.value("highlight", false)) doc["highlight_keys"].push_back(n["key"]);
    return doc;
}

std::string Service::export_graph(std::int64_t run_id, GraphFormat format, const FilterSpec& filter,
                                  std::optional<LayoutMethod> layout) const {
    const auto a = analysis(run_id);
    return alertgraph::export_graph(filter_graph(a->graph, filter), format, {layout, std::nullopt});
}

json Service::timeline(std::int64_t run_id, Perspective perspective, const std::optional<std::string>& host,
                       std::optional<Timestamp> from, std::optional<Timestamp> to) const {
    const auto a = analysis(run_id);
    const bool attacker_view = perspective == Perspective::Attacker;

    std::vector<const Episode*> selected;
    for (const auto& e : a->episodes) {
        const auto& lane = attacker_view ? e.attacker_ip : e.victim_ip;
        if (host && lane != *host) continue;
        if (from && e.end < *from) continue;
        if (to && e.start > *to) continue;
        selected.push_back(&e);
    }
    std::stable_sort(selected.begin(), selected.end(),
                     [](const Episode* x, const Episode* y) { return x->start < y->start; });

    std::map<std::string, std::set<std::string>> lanes;
    json segments = json::array();
    for (const auto* e : selected) {
        auto seg = segment_json(*e, perspective, a->graph);
        lanes[seg["lane"].get<std::string>()].insert(seg["row_label"].get<std::string>());
        segments.push_back(std::move(seg));
    }
    json lane_docs = json::array();
    for (const auto& [lane, rows] : lanes) lane_docs.push_back(json{{"lane", lane}, {"rows", rows}});

    json doc{
        {"schema", "alertgraph.timeline.v1"},
        {"run_id", run_id},
        {"perspective", attacker_view ? "attacker" : "victim"},
        {"lanes", lane_docs},
        {"segments", segments},
    };
    if (host) doc["host"] = *host;
    if (from) doc["start"] = format_rfc3339(*from);
    if (to) doc["end"] = format_rfc3339(*to);
    return doc;
}

json Service::matrix(std::int64_t run_id, const FilterSpec& filter) const {
    const auto a = analysis(run_id);
    const auto config = settings_.current();
    RecommenderMatrix m;
    try {
        m = build_matrix(a->graph, a->episodes, *config, filter);
    } catch (const EmptyNodeSetError&) {
        m = empty_matrix(*config);
    }
    auto doc = to_json(m);
    doc["run_id"] = run_id;
    doc["urgency_ranges"] = to_json(*config)["urgency_ranges"];
    return doc;
}

json Service::signature_table(std::int64_t run_id, const NodeKey& node, SignatureColumn sort, bool descending,
                              std::size_t page) const {
    if (page == 0) throw ValidationError("page numbers start at 1");
    const auto a = analysis(run_id);
    auto rows = node_signature_table(a->graph, a->episodes, node);
    sort_signature_rows(rows, sort, descending);

    const std::size_t total = rows.size();
    const std::size_t pages = std::max<std::size_t>(1, (total + kSignaturePageSize - 1) / kSignaturePageSize);
    json out = json::array();
    for (std::size_t i = (page - 1) * kSignaturePageSize; i < total && i < page * kSignaturePageSize; ++i)
        out.push_back(to_json(rows[i]));
    return json{
        {"run_id", run_id}, {"node", node.label()}, {"page", page},
        {"pages", pages},   {"page_size", kSignaturePageSize}, {"total_rows", total},
        {"rows", out},
    };
}

std::string Service::signature_table_tsv(std::int64_t run_id, const NodeKey& node, SignatureColumn sort,
                                         bool descending) const {
    const auto a = analysis(run_id);
    auto rows = node_signature_table(a->graph, a->episodes, node);
    sort_signature_rows(rows, sort, descending);
    return alertgraph::signature_table_tsv(rows);
}

json Service::config() const { return to_json(*settings_.current()); }

json Service::put_config(const json& document) {
    auto next = urgency_config_from_json(document);
    std::lock_guard lock(config_mutex_);
    store_.save_config(next);
    return to_json(settings_.update(std::move(next)));
}

}  // namespace alertgraph
