#include "alertgraph/ais_mapping.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "alertgraph/errors.hpp"
#include "builtin_data.hpp"

namespace alertgraph {
namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

bool icontains(std::string_view haystack, std::string_view needle) {
    const auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
    return it != haystack.end();
}

}  // namespace

bool MappingRule::matches(std::string_view signature, std::int64_t sid, std::string_view alert_category) const {
    if (category && !iequals(*category, alert_category)) return false;
    if (signature_contains && !icontains(signature, *signature_contains)) return false;
    if (signature_id && *signature_id != sid) return false;
    return true;
}

AisMapping::AisMapping(std::vector<MappingRule> rules) : rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& r = rules_[i];
        if (!r.category && !r.signature_contains && !r.signature_id)
            throw ConfigError("mapping rule " + std::to_string(i) + " has no matcher");
        if (r.signature_contains && r.signature_contains->empty())
            throw ConfigError("mapping rule " + std::to_string(i) + " has an empty signature_contains");
    }
}

const AisMapping& AisMapping::builtin() {
    static const AisMapping mapping = from_json(detail::builtin_ais_mapping_json());
    return mapping;
}

AisMapping AisMapping::from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array())
        throw ConfigError("mapping document must be an object with a \"rules\" array");

    std::vector<MappingRule> rules;
    for (const auto& item : doc["rules"]) {
        if (!item.is_object()) throw ConfigError("mapping rule must be an object");
        MappingRule rule;
        try {
            if (item.contains("category")) rule.category = item["category"].get<std::string>();
            if (item.contains("signature_contains"))
                rule.signature_contains = item["signature_contains"].get<std::string>();
            if (item.contains("signature_id")) rule.signature_id = item["signature_id"].get<std::int64_t>();
            const auto micro_name = item.at("micro").get<std::string>();
            const auto micro = parse_micro(micro_name);
            if (!micro) throw ConfigError("unknown micro stage '" + micro_name + "'");
            rule.micro = *micro;
            if (item.contains("severity")) {
                const auto name = item["severity"].get<std::string>();
                rule.severity = parse_severity(name);
                if (!rule.severity) throw ConfigError("unknown severity '" + name + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("malformed mapping rule: ") + e.what());
        }
        rules.push_back(std::move(rule));
    }
    return AisMapping(std::move(rules));
}

AisMapping AisMapping::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open mapping file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

AisAssignment AisMapping::map(std::string_view signature, std::int64_t signature_id,
                              std::string_view category) const {
    for (const auto& rule : rules_) {
        if (rule.matches(signature, signature_id, category))
            return {rule.micro, macro_of(rule.micro), rule.severity.value_or(default_severity(rule.micro))};
    }
    return {Micro::Unknown, Macro::Unknown, Severity::Low};
}

}  // namespace alertgraph
