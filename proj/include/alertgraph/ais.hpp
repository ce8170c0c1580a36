#pragma once

// Attack stages (Action-Intent States). A Micro stage is a technique, a Macro
// stage is the tactic that groups it.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace alertgraph {

enum class Severity { Low = 0, Medium = 1, High = 2 };

inline constexpr std::size_t kSeverityCount = 3;

/// Column order of the recommender matrix follows declaration order.
enum class Macro {
    Reconnaissance,
    InitialAccess,
    Execution,
    PrivilegeEscalation,
    CommandAndControl,
    Impact,
    Exfiltration,
    Unknown,
};

inline constexpr std::size_t kMacroCount = 8;

enum class Micro {
    ActiveReconnaissance,
    PassiveReconnaissance,
    HostDiscovery,
    ServiceDiscovery,
    VulnerabilityDiscovery,
    InformationDiscovery,
    BruteForceCredentials,
    PublicAppExploitation,
    DataDelivery,
    ArbitraryCodeExecution,
    UserPrivilegeEscalation,
    RootPrivilegeEscalation,
    AccountManipulation,
    C2Communication,
    NetworkDoS,
    EndpointDoS,
    ResourceHijacking,
    DataManipulation,
    DataDistortion,
    DataDestruction,
    DataExfiltration,
    Unknown,
};

inline constexpr std::size_t kMicroCount = 22;

/// Per-Micro severity level, indexed by the Micro's underlying value.
using SeverityTable = std::array<Severity, kMicroCount>;

constexpr std::size_t index_of(Micro m) noexcept { return static_cast<std::size_t>(m); }
constexpr std::size_t index_of(Macro m) noexcept { return static_cast<std::size_t>(m); }
constexpr std::size_t index_of(Severity s) noexcept { return static_cast<std::size_t>(s); }

std::array<Micro, kMicroCount> all_micros();
std::array<Macro, kMacroCount> all_macros();

Macro macro_of(Micro m) noexcept;
Severity default_severity(Micro m) noexcept;
SeverityTable default_severity_table();

std::string_view to_string(Micro m) noexcept;
std::string_view to_string(Macro m) noexcept;
std::string_view to_string(Severity s) noexcept;

/// Lower-case, dash separated form of a Macro name ("command-and-control"),
/// used as the color class of nodes and timeline segments.
std::string macro_slug(Macro m);

// Parsers accept the display name case-insensitively, with spaces, dashes and
// underscores treated alike ("data exfiltration", "DATA_EXFILTRATION").
std::optional<Micro> parse_micro(std::string_view text);
std::optional<Macro> parse_macro(std::string_view text);
std::optional<Severity> parse_severity(std::string_view text);

}  // namespace alertgraph
