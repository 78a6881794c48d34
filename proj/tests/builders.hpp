// Small helpers for assembling records in tests.
#pragma once

#include "ecograph/records.hpp"
#include "ecograph/timeutil.hpp"

#include <string>
#include <vector>

namespace build {

inline ecograph::Timestamp at(const std::string& text) { return ecograph::parse_timestamp_or_throw(text); }

inline ecograph::Patch patch(std::string email, std::int64_t added, std::int64_t deleted,
                             const std::string& when = "2015-01-10T00:00:00Z", bool approved = true) {
    ecograph::Patch p;
    p.author_email = std::move(email);
    p.added_loc = added;
    p.deleted_loc = deleted;
    p.submitted_at = at(when);
    p.approved = approved;
    return p;
}

inline ecograph::IssueRecord issue(std::string key, std::vector<ecograph::Patch> patches,
                                   ecograph::IssueType type = ecograph::IssueType::bug,
                                   std::vector<std::string> fix_versions = {"2.7.0"},
                                   const std::string& created = "2015-01-01T00:00:00Z",
                                   const std::string& resolved = "2015-02-01T00:00:00Z") {
    ecograph::IssueRecord r;
    r.key = std::move(key);
    r.issue_type = type;
    r.fix_versions = std::move(fix_versions);
    r.created_at = at(created);
    if (!resolved.empty()) r.resolved_at = at(resolved);
    r.reporter_email = "reporter@example.org";
    r.patches = std::move(patches);
    return r;
}

} // namespace build
