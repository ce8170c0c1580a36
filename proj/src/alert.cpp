#include "alertgraph/alert.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <optional>

#include <nlohmann/json.hpp>

#include "alertgraph/errors.hpp"

namespace alertgraph {
namespace {

using nlohmann::json;

enum class RecordKind { Alert, Ignored };

struct RecordOutcome {
    RecordKind kind = RecordKind::Alert;
    std::optional<NormalizedAlert> alert;
    std::string error;
};

const json* field(const json& obj, std::string_view key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

RecordOutcome normalize(const json& rec, const AisMapping& mapping, const PortServiceTable& ports) {
    RecordOutcome out;
    if (!rec.is_object()) {
        out.error = "record is not an object";
        return out;
    }
    if (const auto* et = field(rec, "event_type"); et && et->is_string() && et->get<std::string>() != "alert") {
        out.kind = RecordKind::Ignored;
        return out;
    }

    const auto* ts = field(rec, "timestamp");
    const auto* src = field(rec, "src_ip");
    const auto* dst = field(rec, "dest_ip");
    const auto* port = field(rec, "dest_port");
    const auto* alert = field(rec, "alert");
    if (!ts || !src || !dst || !port || !alert || !alert->is_object()) {
        out.error = "missing required field";
        return out;
    }
    const auto* sig = field(*alert, "signature");
    const auto* sid = field(*alert, "signature_id");
    const auto* cat = field(*alert, "category");
    if (!sig || !sid || !cat) {
        out.error = "missing required alert field";
        return out;
    }
    if (!ts->is_string() || !src->is_string() || !dst->is_string() || !port->is_number_integer() ||
        !sig->is_string() || !sid->is_number_integer() || !cat->is_string()) {
        out.error = "field has wrong type";
        return out;
    }

    const auto when = parse_rfc3339(ts->get<std::string>());
    if (!when) {
        out.error = "unparseable timestamp";
        return out;
    }
    NormalizedAlert a;
    a.timestamp = *when;
    a.src_ip = src->get<std::string>();
    a.dst_ip = dst->get<std::string>();
    if (!is_valid_ip(a.src_ip) || !is_valid_ip(a.dst_ip)) {
        out.error = "invalid IP address";
        return out;
    }
    const auto p = port->get<std::int64_t>();
    if (p < 0 || p > 65535) {
        out.error = "dest_port out of range";
        return out;
    }
    a.dst_port = static_cast<int>(p);
    a.signature = sig->get<std::string>();
    a.signature_id = sid->get<std::int64_t>();
    a.category = cat->get<std::string>();

    const auto stage = mapping.map(a.signature, a.signature_id, a.category);
    a.micro = stage.micro;
    a.macro = stage.macro;
    a.severity = stage.severity;
    a.service = ports.resolve(a.dst_port);
    out.alert = std::move(a);
    return out;
}

struct Accumulator {
    ParsePolicy policy;
    ParseResult result;

    void add(RecordOutcome outcome, std::size_t line) {
        if (outcome.kind == RecordKind::Ignored) return;
        if (outcome.alert) {
            result.alerts.push_back(std::move(*outcome.alert));
            return;
        }
        if (policy == ParsePolicy::Strict) throw RecordError(line, outcome.error);
        ++result.skipped;
    }
};

std::size_t first_non_space(std::string_view s) {
    const auto pos = s.find_first_not_of(" \t\r\n");
    return pos == std::string_view::npos ? s.size() : pos;
}

}  // namespace

bool is_valid_ip(std::string_view text) {
    const std::string s(text);
    unsigned char buf[16];
    return inet_pton(AF_INET, s.c_str(), buf) == 1 || inet_pton(AF_INET6, s.c_str(), buf) == 1;
}

ParseResult parse_alert_file(std::string_view raw, ParsePolicy policy, const AisMapping& mapping,
                             const PortServiceTable& ports) {
    Accumulator acc{policy, {}};
    const auto start = first_non_space(raw);

    if (start < raw.size() && raw[start] == '[') {
        const auto doc = json::parse(raw, nullptr, false);
        if (doc.is_discarded() || !doc.is_array()) throw FormatError("input is not a valid JSON array");
        std::size_t index = 0;
        for (const auto& rec : doc) acc.add(normalize(rec, mapping, ports), ++index);
    } else {
        std::size_t line_no = 0;
        std::size_t non_blank = 0;
        std::size_t json_lines = 0;
        std::size_t pos = 0;
        while (pos < raw.size()) {
            auto end = raw.find('\n', pos);
            if (end == std::string_view::npos) end = raw.size();
            const auto line = raw.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (first_non_space(line) == line.size()) continue;
            ++non_blank;
            const auto rec = json::parse(line, nullptr, false);
            if (rec.is_discarded()) {
                if (policy == ParsePolicy::Strict) throw RecordError(line_no, "invalid JSON");
                ++acc.result.skipped;
                continue;
            }
            ++json_lines;
            acc.add(normalize(rec, mapping, ports), line_no);
        }
        if (non_blank > 0 && json_lines == 0) throw FormatError("no line of the input is valid JSON");
    }

    std::stable_sort(acc.result.alerts.begin(), acc.result.alerts.end(),
                     [](const NormalizedAlert& a, const NormalizedAlert& b) { return a.timestamp < b.timestamp; });
    return std::move(acc.result);
}

void to_json(nlohmann::json& j, const NormalizedAlert& a) {
    j = json{
        {"timestamp", format_rfc3339(a.timestamp)},
        {"src_ip", a.src_ip},
        {"dest_ip", a.dst_ip},
        {"dest_port", a.dst_port},
        {"signature", a.signature},
        {"signature_id", a.signature_id},
        {"category", a.category},
        {"micro", to_string(a.micro)},
        {"macro", to_string(a.macro)},
        {"severity", to_string(a.severity)},
        {"service", a.service},
    };
}

void from_json(const nlohmann::json& j, NormalizedAlert& a) {
    const auto ts = parse_rfc3339(j.at("timestamp").get<std::string>());
    const auto micro = parse_micro(j.at("micro").get<std::string>());
    const auto macro = parse_macro(j.at("macro").get<std::string>());
    const auto severity = parse_severity(j.at("severity").get<std::string>());
    if (!ts || !micro || !macro || !severity) throw FormatError("malformed normalized alert");
    a.timestamp = *ts;
    a.src_ip = j.at("src_ip").get<std::string>();
    a.dst_ip = j.at("dest_ip").get<std::string>();
    a.dst_port = j.at("dest_port").get<int>();
    a.signature = j.at("signature").get<std::string>();
    a.signature_id = j.at("signature_id").get<std::int64_t>();
    a.category = j.at("category").get<std::string>();
    a.micro = *micro;
    a.macro = *macro;
    a.severity = *severity;
    a.service = j.at("service").get<std::string>();
}

}  // namespace alertgraph
