#include "alertgraph/ais.hpp"

#include <algorithm>
#include <cctype>

namespace alertgraph {
namespace {

struct MicroInfo {
    std::string_view name;
    Macro macro;
    Severity severity;
};

constexpr std::array<MicroInfo, kMicroCount> kMicros{{
    {"Active Reconnaissance", Macro::Reconnaissance, Severity::Low},
    {"Passive Reconnaissance", Macro::Reconnaissance, Severity::Low},
    {"Host Discovery", Macro::Reconnaissance, Severity::Low},
    {"Service Discovery", Macro::Reconnaissance, Severity::Low},
    {"Vulnerability Discovery", Macro::Reconnaissance, Severity::Low},
    {"Information Discovery", Macro::Reconnaissance, Severity::Low},
    {"Brute Force Credentials", Macro::InitialAccess, Severity::Medium},
    {"Public App Exploitation", Macro::InitialAccess, Severity::Medium},
    {"Data Delivery", Macro::InitialAccess, Severity::Medium},
    {"Arbitrary Code Execution", Macro::Execution, Severity::High},
    {"User Privilege Escalation", Macro::PrivilegeEscalation, Severity::Medium},
    {"Root Privilege Escalation", Macro::PrivilegeEscalation, Severity::High},
    {"Account Manipulation", Macro::PrivilegeEscalation, Severity::Medium},
    {"C2 Communication", Macro::CommandAndControl, Severity::Medium},
    {"Network DoS", Macro::Impact, Severity::High},
    {"Endpoint DoS", Macro::Impact, Severity::High},
    {"Resource Hijacking", Macro::Impact, Severity::High},
    {"Data Manipulation", Macro::Impact, Severity::High},
    {"Data Distortion", Macro::Impact, Severity::High},
    {"Data Destruction", Macro::Impact, Severity::High},
    {"Data Exfiltration", Macro::Exfiltration, Severity::High},
    {"Unknown", Macro::Unknown, Severity::Low},
}};

constexpr std::array<std::string_view, kMacroCount> kMacroNames{
    "Reconnaissance", "Initial Access", "Execution", "Privilege Escalation",
    "Command and Control", "Impact", "Exfiltration", "Unknown",
};

constexpr std::array<std::string_view, kSeverityCount> kSeverityNames{"Low", "Medium", "High"};

std::string fold(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == ' ' || c == '-' || c == '_')
            out.push_back(' ');
        else
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view text, const std::array<std::string_view, N>& names) {
    const std::string key = fold(text);
    for (std::size_t i = 0; i < N; ++i)
        if (fold(names[i]) == key) return static_cast<Enum>(i);
    return std::nullopt;
}

std::array<std::string_view, kMicroCount> micro_names() {
    std::array<std::string_view, kMicroCount> names{};
    for (std::size_t i = 0; i < kMicroCount; ++i) names[i] = kMicros[i].name;
    return names;
}

}  // namespace

std::array<Micro, kMicroCount> all_micros() {
    std::array<Micro, kMicroCount> out{};
    for (std::size_t i = 0; i < kMicroCount; ++i) out[i] = static_cast<Micro>(i);
    return out;
}

std::array<Macro, kMacroCount> all_macros() {
    std::array<Macro, kMacroCount> out{};
    for (std::size_t i = 0; i < kMacroCount; ++i) out[i] = static_cast<Macro>(i);
    return out;
}

Macro macro_of(Micro m) noexcept { return kMicros[index_of(m)].macro; }

Severity default_severity(Micro m) noexcept { return kMicros[index_of(m)].severity; }

SeverityTable default_severity_table() {
    SeverityTable table{};
    for (std::size_t i = 0; i < kMicroCount; ++i) table[i] = kMicros[i].severity;
    return table;
}

std::string_view to_string(Micro m) noexcept { return kMicros[index_of(m)].name; }
std::string_view to_string(Macro m) noexcept { return kMacroNames[index_of(m)]; }
std::string_view to_string(Severity s) noexcept { return kSeverityNames[index_of(s)]; }

std::string macro_slug(Macro m) {
    std::string out = fold(to_string(m));
    std::replace(out.begin(), out.end(), ' ', '-');
    return out;
}

std::optional<Micro> parse_micro(std::string_view text) {
    static const auto names = micro_names();
    return lookup<Micro>(text, names);
}

std::optional<Macro> parse_macro(std::string_view text) { return lookup<Macro>(text, kMacroNames); }

std::optional<Severity> parse_severity(std::string_view text) {
    return lookup<Severity>(text, kSeverityNames);
}

}  // namespace alertgraph
