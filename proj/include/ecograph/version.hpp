#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecograph {

/// Dotted numeric version ("2.7.1"). At least major.minor is required.
struct Version {
    std::vector<int> parts;

    int major() const { return parts.at(0); }
    int minor() const { return parts.at(1); }
    /// "R<major>.<minor>"
    std::string release_id() const;

    friend auto operator<=>(const Version&, const Version&) = default;
};

std::optional<Version> parse_version(std::string_view text);

/// Parses "R2.7" into {2, 7}.
std::optional<Version> parse_release_id(std::string_view id);

} // namespace ecograph
