#pragma once

#include "ecograph/timeutil.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecograph {

enum class IssueType { feature, improvement, bug, other };

std::string_view to_string(IssueType type) noexcept;

/// Canonical names only ("feature", "improvement", "bug", "other").
std::optional<IssueType> issue_type_from_canonical(std::string_view name) noexcept;

/// Tracker names ("New Feature", "Improvement", "Bug", ...). Unknown -> other.
IssueType issue_type_from_tracker(std::string_view name) noexcept;

struct Patch {
    std::string author_email;
    std::int64_t added_loc = 0;
    std::int64_t deleted_loc = 0;
    Timestamp submitted_at{};
    bool approved = true;

    std::int64_t net_loc() const noexcept { return added_loc - deleted_loc; }

    friend bool operator==(const Patch&, const Patch&) = default;
};

struct IssueRecord {
    std::string key;
    IssueType issue_type = IssueType::other;
    std::vector<std::string> fix_versions;
    Timestamp created_at{};
    std::optional<Timestamp> resolved_at;
    std::string reporter_email;
    std::vector<Patch> patches;

    bool resolved() const noexcept { return resolved_at.has_value(); }

    friend bool operator==(const IssueRecord&, const IssueRecord&) = default;
};

/// One fetched tracker document. `payload` is the issue JSON exactly as the
/// server sent it; `attachments` holds fetched attachment bodies by attachment id.
struct RawIssueDocument {
    std::string source_id;
    std::string payload;
    Timestamp fetched_at{};
    std::map<std::string, std::string> attachments;

    friend bool operator==(const RawIssueDocument&, const RawIssueDocument&) = default;
};

} // namespace ecograph
