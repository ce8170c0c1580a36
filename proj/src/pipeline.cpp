#include "alertgraph/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "alertgraph/errors.hpp"

namespace alertgraph {

using nlohmann::json;

void AnalysisOptions::validate() const {
    if (gap_threshold <= Duration::zero()) throw ValidationError("gap threshold must be positive");
    if (merge_min_count == 0) throw ValidationError("merge_min_count must be at least 1");
}

json to_json(const AnalysisOptions& o) {
    return json{
        {"gap_threshold_us", o.gap_threshold.count()},
        {"merge_min_count", o.merge_min_count},
        {"policy", o.policy == ParsePolicy::Strict ? "strict" : "skip"},
    };
}

AnalysisOptions analysis_options_from_json(const json& j) {
    AnalysisOptions o;
    o.gap_threshold = Duration{j.at("gap_threshold_us").get<std::int64_t>()};
    o.merge_min_count = j.at("merge_min_count").get<std::size_t>();
    o.policy = j.at("policy").get<std::string>() == "strict" ? ParsePolicy::Strict : ParsePolicy::Skip;
    return o;
}

Analysis analyze(std::string_view raw, const AnalysisOptions& options, const UrgencyConfig& config,
                 const AisMapping& mapping, const PortServiceTable& ports) {
    options.validate();
    config.validate();

    Analysis out;
    out.options = options;
    out.config = config;

    auto parsed = parse_alert_file(raw, options.policy, mapping, ports);
    out.alerts = std::move(parsed.alerts);
    out.skipped = parsed.skipped;

    const auto sequences = mine_sequences(out.alerts, options.gap_threshold, config.levels);
    const auto model = SuffixModel::build(sequences, options.merge_min_count);
    const auto annotated = assign_context_ids(sequences, model);
    out.episodes = flatten(annotated);

    const auto objective_graphs = build_objective_graphs(annotated);
    out.objective_graph_count = objective_graphs.size();
    out.graph = build_global_graph(objective_graphs);
    return out;
}

std::optional<SignatureColumn> parse_signature_column(std::string_view name) {
    if (name == "signature") return SignatureColumn::Signature;
    if (name == "start" || name == "start_ts") return SignatureColumn::Start;
    if (name == "end" || name == "end_ts") return SignatureColumn::End;
    if (name == "attacker" || name == "attacker_ip") return SignatureColumn::Attacker;
    if (name == "victim" || name == "victim_ip") return SignatureColumn::Victim;
    if (name == "frequency") return SignatureColumn::Frequency;
    return std::nullopt;
}

std::vector<SignatureRow> node_signature_table(const GlobalAttackGraph& g, std::span<const Episode> episodes,
                                               const NodeKey& node) {
    const auto* n = g.find(node);
    if (!n) throw NotFound("node '" + node.label() + "' is not in the graph");

    std::vector<SignatureRow> rows;
    for (auto ref : n->episode_refs) {
        auto it = episodes.begin();
        if (ref < episodes.size() && episodes[ref].id == ref)
            it += static_cast<std::ptrdiff_t>(ref);
        else
            it = std::find_if(episodes.begin(), episodes.end(), [&](const Episode& e) { return e.id == ref; });
        if (it == episodes.end()) throw NotFound("episode " + std::to_string(ref) + " is missing");
        for (const auto& [signature, count] : it->signature_histogram)
            rows.push_back({signature, it->start, it->end, it->attacker_ip, it->victim_ip, count, it->id});
    }
    return rows;
}

void sort_signature_rows(std::vector<SignatureRow>& rows, SignatureColumn column, bool descending) {
    auto less = [column](const SignatureRow& a, const SignatureRow& b) {
        switch (column) {
            case SignatureColumn::Signature: return a.signature < b.signature;
            case SignatureColumn::Start: return a.start < b.start;
            case SignatureColumn::End: return a.end < b.end;
            case SignatureColumn::Attacker: return a.attacker_ip < b.attacker_ip;
            case SignatureColumn::Victim: return a.victim_ip < b.victim_ip;
            case SignatureColumn::Frequency: return a.frequency < b.frequency;
        }
        return false;
    };
    if (descending)
        std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return less(b, a); });
    else
        std::stable_sort(rows.begin(), rows.end(), less);
}

std::string signature_table_tsv(std::span<const SignatureRow> rows) {
    auto clean = [](std::string s) {
        std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
        return s;
    };
    std::ostringstream out;
    out << "signature\tstart_ts\tend_ts\tattacker_ip\tvictim_ip\tfrequency\n";
    for (const auto& r : rows)
        out << clean(r.signature) << '\t' << format_rfc3339(r.start) << '\t' << format_rfc3339(r.end) << '\t'
            << clean(r.attacker_ip) << '\t' << clean(r.victim_ip) << '\t' << r.frequency << '\n';
    return out.str();
}

json to_json(const SignatureRow& row) {
    return json{
        {"signature", row.signature},
        {"start_ts", format_rfc3339(row.start)},
        {"end_ts", format_rfc3339(row.end)},
        {"attacker_ip", row.attacker_ip},
        {"victim_ip", row.victim_ip},
        {"frequency", row.frequency},
        {"episode_id", row.episode_id},
    };
}

}  // namespace alertgraph
