#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "alertgraph/ais.hpp"
#include "alertgraph/ais_mapping.hpp"
#include "alertgraph/services.hpp"
#include "alertgraph/time.hpp"

namespace alertgraph {

struct NormalizedAlert {
    Timestamp timestamp{};
    std::string src_ip;  // attacker
    std::string dst_ip;  // victim
    int dst_port = 0;
    std::string signature;
    std::int64_t signature_id = 0;
    std::string category;
    Micro micro = Micro::Unknown;
    Macro macro = Macro::Unknown;
    Severity severity = Severity::Low;
    std::string service;

    bool operator==(const NormalizedAlert&) const = default;
};

enum class ParsePolicy { Skip, Strict };

struct ParseResult {
    std::vector<NormalizedAlert> alerts;
    std::size_t skipped = 0;
};

/// Parses Suricata-style alert records, either one JSON object per line or a
/// single top-level array. Records whose `event_type` is present and not
/// "alert" are ignored without being counted.
///
/// Under ParsePolicy::Skip malformed records are counted in `skipped`; under
/// Strict the first one raises RecordError (line number for line-delimited
/// input, 1-based element index for array input). Input in which no record
/// is even valid JSON raises FormatError.
///
/// Alerts come back stably sorted by timestamp.
ParseResult parse_alert_file(std::string_view raw, ParsePolicy policy = ParsePolicy::Skip,
                             const AisMapping& mapping = AisMapping::builtin(),
                             const PortServiceTable& ports = PortServiceTable::builtin());

bool is_valid_ip(std::string_view text);

void to_json(nlohmann::json& j, const NormalizedAlert& a);
void from_json(const nlohmann::json& j, NormalizedAlert& a);

}  // namespace alertgraph
