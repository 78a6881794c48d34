#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ecograph {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses RFC 3339 ("2015-07-06T10:00:00Z", "...+02:00") and the JIRA variant
/// with a colon-less offset ("2015-07-06T10:00:00.000+0000"). Result is UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Like parse_timestamp but throws std::invalid_argument.
Timestamp parse_timestamp_or_throw(std::string_view text);

/// Canonical UTC form: "YYYY-MM-DDTHH:MM:SSZ", with ".mmm" only when non-zero.
std::string format_timestamp(Timestamp ts);

double days_between(Timestamp from, Timestamp to);

} // namespace ecograph
