#pragma once

#include "ecograph/graph.hpp"
#include "ecograph/identity.hpp"
#include "ecograph/ingest.hpp"
#include "ecograph/records.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ecograph {

// ---------------------------------------------------------------------------
// Release windows
// ---------------------------------------------------------------------------

struct ReleaseSpec {
    std::string id;  // "R<major>.<minor>"
    Timestamp released_at{};
};

/// `[{"id": "R2.2", "released_at": "2013-10-15T00:00:00Z"}, ...]`
std::vector<ReleaseSpec> parse_release_config(const nlohmann::json& config);
std::vector<ReleaseSpec> load_release_config(const std::filesystem::path& path);

struct Release {
    std::string id;
    std::vector<std::string> member_versions;
    Timestamp start_at{};
    Timestamp released_at{};
    std::vector<std::string> issues;  // issue keys, sorted
};

using ReleaseMap = std::map<std::string, Release>;

/// An issue joins R<maj>.<min> when one of its fix versions has that prefix;
/// when several configured releases match, the earliest by release date wins.
/// start_at is the previous configured release date (first release: earliest
/// patch timestamp among its issues).
ReleaseMap assign_releases(const std::vector<IssueRecord>& corpus, const std::vector<ReleaseSpec>& releases,
                           const Warning& warn = {});

/// Releases ordered by release date.
std::vector<const Release*> by_release_date(const ReleaseMap& releases);

/// Issues of `release`, in key order.
std::vector<IssueRecord> release_issues(const Release& release, const std::vector<IssueRecord>& corpus);

/// Issues whose fix versions carry the release's major.minor prefix, without
/// the earliest-release arbitration (used when no release dates are known).
std::vector<IssueRecord> issues_with_prefix(const std::vector<IssueRecord>& corpus, const std::string& release_id);

// ---------------------------------------------------------------------------
// Innovation and time-to-market
// ---------------------------------------------------------------------------

struct InnovationReport {
    std::string release_id;
    std::size_t feature_count = 0;
    std::size_t improvement_count = 0;
    std::size_t bug_count = 0;
    std::size_t other_count = 0;
    std::int64_t change_size_loc = 0;
    double cycle_time_days = 0.0;
};

/// Counts only resolved issues of the release.
InnovationReport innovation_report(const Release& release, const std::vector<IssueRecord>& corpus);

struct SummaryStatistics {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;  // population (n denominator)
};

/// Throws std::invalid_argument on empty input.
SummaryStatistics summarize(std::span<const double> values);

struct IssueTypeStatistics {
    SummaryStatistics feature;
    SummaryStatistics improvement;
    SummaryStatistics bug;
    SummaryStatistics other;
    SummaryStatistics change_size_loc;
    SummaryStatistics cycle_time_days;
};

IssueTypeStatistics issue_type_statistics(const std::vector<InnovationReport>& reports);

// ---------------------------------------------------------------------------
// Longitudinal rankings
// ---------------------------------------------------------------------------

struct RankedStakeholder {
    std::string stakeholder;
    double value = 0.0;
    std::size_t rank = 0;
};

struct ReleaseRanking {
    std::string release_id;
    std::vector<RankedStakeholder> entries;  // rank order
};

struct RankingSeries {
    std::string metric_name;
    std::vector<ReleaseRanking> releases;
    std::map<std::string, double> average_rank;
    std::map<std::string, double> accumulated;

    /// The `n` stakeholders with the largest accumulated value (ties by id).
    std::vector<std::string> top(std::size_t n) const;
};

/// Metric values of the stakeholders present in one release.
using ReleaseValues = std::pair<std::string, std::map<std::string, double>>;

/// Ranks descending by value, ties by ascending id, ranks 1..m per release.
/// `per_release` must be in release-date order.
RankingSeries ranking_series(const std::vector<ReleaseValues>& per_release, std::string metric_name);

/// Fixed one-decimal rendering used for average ranks.
std::string format_one_decimal(double value);

// ---------------------------------------------------------------------------
// Cross-category collaboration
// ---------------------------------------------------------------------------

struct CategoryCrosstab {
    /// Keyed by (a, b) with a <= b in category declaration order.
    std::map<std::pair<UserCategory, UserCategory>, std::size_t> cells;
    /// Co-contribution pairs involving at least one unlabeled stakeholder.
    std::size_t unknown_pairs = 0;

    std::size_t count(UserCategory a, UserCategory b) const;
    std::size_t labeled_total() const;
};

/// Counts unordered co-contributing stakeholder pairs per issue.
CategoryCrosstab category_crosstab(const std::vector<IssueContribution>& contributions, const AffiliationMap& map);

// ---------------------------------------------------------------------------
// Self-implementation
// ---------------------------------------------------------------------------

/// Share of patches whose author email equals the issue's reporter email.
/// Throws std::invalid_argument when the corpus has no patches.
double self_implementation_ratio(const std::vector<IssueRecord>& corpus);

} // namespace ecograph
