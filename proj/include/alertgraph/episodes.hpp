#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alertgraph/alert.hpp"
#include "alertgraph/ais.hpp"
#include "alertgraph/time.hpp"

namespace alertgraph {

inline constexpr Duration kDefaultGapThreshold = std::chrono::seconds(300);

/// A burst of alerts with one (micro, service) stage between one attacker and
/// one victim: a single attacker action.
struct Episode {
    std::size_t id = 0;
    std::string attacker_ip;
    std::string victim_ip;
    Micro micro = Micro::Unknown;
    Macro macro = Macro::Unknown;
    Severity severity = Severity::Low;
    std::string service;
    Timestamp start{};
    Timestamp end{};
    std::size_t alert_count = 0;
    std::map<std::string, std::size_t> signature_histogram;
    /// 0 until a context model has annotated the episode.
    int context_id = 0;

    bool operator==(const Episode&) const = default;
};

struct EpisodeSequence {
    std::string attacker_ip;
    std::string victim_ip;
    std::vector<Episode> episodes;

    bool operator==(const EpisodeSequence&) const = default;
};

using HostPair = std::pair<std::string, std::string>;  // (attacker, victim)

std::map<HostPair, std::vector<NormalizedAlert>> group_by_pair(std::span<const NormalizedAlert> alerts);

/// Segments one pair's time-ordered alerts. An alert extends the current
/// episode iff it has the same (micro, service) and arrives no later than
/// `gap_threshold` after the episode's last alert. Episode severity comes
/// from `severities`, not from the individual alerts. Throws ValidationError
/// for a non-positive threshold.
std::vector<Episode> mine_episodes(std::span<const NormalizedAlert> pair_alerts, Duration gap_threshold,
                                   const SeverityTable& severities = default_severity_table());

/// One sequence per pair in (attacker, victim) order; episode ids are
/// assigned consecutively in that order.
std::vector<EpisodeSequence> build_sequences(std::map<HostPair, std::vector<Episode>> episodes_by_pair);

/// group_by_pair + mine_episodes + build_sequences.
std::vector<EpisodeSequence> mine_sequences(std::span<const NormalizedAlert> alerts,
                                            Duration gap_threshold = kDefaultGapThreshold,
                                            const SeverityTable& severities = default_severity_table());

std::vector<Episode> flatten(std::span<const EpisodeSequence> sequences);

}  // namespace alertgraph
