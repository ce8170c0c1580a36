#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace alertgraph {

using Duration = std::chrono::microseconds;
using Timestamp = std::chrono::sys_time<Duration>;

/// Parses an RFC 3339 instant. Accepts `T` or a space as date/time separator,
/// up to nine fractional digits (truncated to microseconds) and an offset of
/// the form `Z`, `+HH:MM` or `+HHMM`. A missing offset is read as UTC.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

/// UTC rendering with six fractional digits: `2018-11-03T01:40:00.000000Z`.
std::string format_rfc3339(Timestamp ts);

constexpr std::int64_t to_micros(Timestamp ts) noexcept { return ts.time_since_epoch().count(); }
constexpr Timestamp from_micros(std::int64_t us) noexcept { return Timestamp{Duration{us}}; }

}  // namespace alertgraph
