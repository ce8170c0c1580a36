#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alertgraph/ais.hpp"

namespace alertgraph {

/// One row of the signature mapping table. Every present matcher must hit:
/// `category` compares case-insensitively for equality, `signature_contains`
/// is a case-insensitive substring test, `signature_id` is exact.
struct MappingRule {
    std::optional<std::string> category;
    std::optional<std::string> signature_contains;
    std::optional<std::int64_t> signature_id;
    Micro micro = Micro::Unknown;
    /// Overrides the Micro's default severity for alerts hit by this rule.
    std::optional<Severity> severity;

    bool matches(std::string_view signature, std::int64_t sid, std::string_view alert_category) const;
};

struct AisAssignment {
    Micro micro = Micro::Unknown;
    Macro macro = Macro::Unknown;
    Severity severity = Severity::Low;

    bool operator==(const AisAssignment&) const = default;
};

/// Ordered signature -> attack stage rules. First match wins; anything left
/// unmatched becomes (Unknown, Unknown, Low).
class AisMapping {
public:
    AisMapping() = default;
    explicit AisMapping(std::vector<MappingRule> rules);

    /// The table bundled with the library (data/ais_mapping.json).
    static const AisMapping& builtin();
    static AisMapping from_json(std::string_view text);
    static AisMapping load(const std::filesystem::path& path);

    AisAssignment map(std::string_view signature, std::int64_t signature_id,
                      std::string_view category) const;

    const std::vector<MappingRule>& rules() const noexcept { return rules_; }

private:
    std::vector<MappingRule> rules_;
};

}  // namespace alertgraph
