#include "alertgraph/episodes.hpp"

#include <algorithm>

#include "alertgraph/errors.hpp"

namespace alertgraph {

std::map<HostPair, std::vector<NormalizedAlert>> group_by_pair(std::span<const NormalizedAlert> alerts) {
    std::map<HostPair, std::vector<NormalizedAlert>> groups;
    for (const auto& a : alerts) groups[{a.src_ip, a.dst_ip}].push_back(a);
    return groups;
}

std::vector<Episode> mine_episodes(std::span<const NormalizedAlert> pair_alerts, Duration gap_threshold,
                                   const SeverityTable& severities) {
    if (gap_threshold <= Duration::zero()) throw ValidationError("gap threshold must be positive");

    std::vector<Episode> episodes;
    for (const auto& a : pair_alerts) {
        if (!episodes.empty()) {
            auto& cur = episodes.back();
            if (cur.micro == a.micro && cur.service == a.service && a.timestamp - cur.end <= gap_threshold) {
                cur.end = a.timestamp;
                ++cur.alert_count;
                ++cur.signature_histogram[a.signature];
                continue;
            }
        }
        Episode e;
        e.attacker_ip = a.src_ip;
        e.victim_ip = a.dst_ip;
        e.micro = a.micro;
        e.macro = macro_of(a.micro);
        e.severity = severities[index_of(a.micro)];
        e.service = a.service;
        e.start = e.end = a.timestamp;
        e.alert_count = 1;
        e.signature_histogram[a.signature] = 1;
        episodes.push_back(std::move(e));
    }
    return episodes;
}

std::vector<EpisodeSequence> build_sequences(std::map<HostPair, std::vector<Episode>> episodes_by_pair) {
    std::vector<EpisodeSequence> sequences;
    sequences.reserve(episodes_by_pair.size());
    std::size_t next_id = 0;
    for (auto& [pair, episodes] : episodes_by_pair) {
        if (episodes.empty()) continue;
        std::stable_sort(episodes.begin(), episodes.end(),
                         [](const Episode& a, const Episode& b) { return a.start < b.start; });
        for (auto& e : episodes) e.id = next_id++;
        sequences.push_back({pair.first, pair.second, std::move(episodes)});
    }
    return sequences;
}

std::vector<EpisodeSequence> mine_sequences(std::span<const NormalizedAlert> alerts, Duration gap_threshold,
                                            const SeverityTable& severities) {
    std::map<HostPair, std::vector<Episode>> by_pair;
    for (const auto& [pair, group] : group_by_pair(alerts))
        by_pair.emplace(pair, mine_episodes(group, gap_threshold, severities));
    return build_sequences(std::move(by_pair));
}

std::vector<Episode> flatten(std::span<const EpisodeSequence> sequences) {
    std::vector<Episode> out;
    for (const auto& s : sequences) out.insert(out.end(), s.episodes.begin(), s.episodes.end());
    return out;
}

}  // namespace alertgraph
