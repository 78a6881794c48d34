#include "ecograph/analytics.hpp"
#include "ecograph/error.hpp"
#include "ecograph/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace ecograph {

std::vector<ReleaseSpec> parse_release_config(const nlohmann::json& config) {
    if (!config.is_array()) throw ConfigError("release config must be a JSON array");
    std::vector<ReleaseSpec> out;
    std::set<std::string> ids;
    for (const auto& entry : config) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("released_at") ||
            !entry["id"].is_string() || !entry["released_at"].is_string())
            throw ConfigError("release entries need string fields id and released_at");
        ReleaseSpec spec;
        spec.id = entry["id"].get<std::string>();
        if (!parse_release_id(spec.id)) throw ConfigError("release id must look like R<major>.<minor>: " + spec.id);
        auto ts = parse_timestamp(entry["released_at"].get<std::string>());
        if (!ts) throw ConfigError("release " + spec.id + ": invalid released_at");
        spec.released_at = *ts;
        if (!ids.insert(spec.id).second) throw ConfigError("duplicate release id " + spec.id);
        out.push_back(std::move(spec));
    }
    return out;
}

std::vector<ReleaseSpec> load_release_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open release config " + path.string());
    try {
        return parse_release_config(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

ReleaseMap assign_releases(const std::vector<IssueRecord>& corpus, const std::vector<ReleaseSpec>& releases,
                           const Warning& warn) {
    std::vector<ReleaseSpec> ordered = releases;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.released_at < b.released_at; });

    std::map<std::pair<int, int>, std::size_t> by_prefix;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const Version v = *parse_release_id(ordered[i].id);
        by_prefix.emplace(std::pair{v.major(), v.minor()}, i);
    }

    std::vector<std::set<Version>> versions(ordered.size());
    std::vector<std::vector<const IssueRecord*>> members(ordered.size());
    for (const IssueRecord& issue : corpus) {
        std::optional<std::size_t> best;
        std::vector<Version> parsed;
        for (const std::string& fv : issue.fix_versions) {
            auto v = parse_version(fv);
            if (!v) {
                if (warn) warn(issue.key + ": ignoring unparseable fix version '" + fv + "'");
                continue;
            }
            auto it = by_prefix.find({v->major(), v->minor()});
            if (it == by_prefix.end()) continue;
            parsed.push_back(*v);
            if (!best || it->second < *best) best = it->second;
        }
        if (!best) continue;
        members[*best].push_back(&issue);
        const Version target = *parse_release_id(ordered[*best].id);
        for (const Version& v : parsed)
            if (v.major() == target.major() && v.minor() == target.minor()) versions[*best].insert(v);
    }

    ReleaseMap out;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        Release r;
        r.id = ordered[i].id;
        r.released_at = ordered[i].released_at;
        for (const Version& v : versions[i]) {
            std::string s;
            for (std::size_t k = 0; k < v.parts.size(); ++k) s += (k ? "." : "") + std::to_string(v.parts[k]);
            r.member_versions.push_back(std::move(s));
        }
        for (const IssueRecord* issue : members[i]) r.issues.push_back(issue->key);
        std::sort(r.issues.begin(), r.issues.end());

        if (i > 0) {
            r.start_at = ordered[i - 1].released_at;
        } else {
            std::optional<Timestamp> earliest;
            for (const IssueRecord* issue : members[i])
                for (const Patch& p : issue->patches)
                    if (!earliest || p.submitted_at < *earliest) earliest = p.submitted_at;
            if (!earliest)
                for (const IssueRecord* issue : members[i])
                    if (!earliest || issue->created_at < *earliest) earliest = issue->created_at;
            r.start_at = std::min(earliest.value_or(r.released_at), r.released_at);
        }
        out.emplace(r.id, std::move(r));
    }
    return out;
}

std::vector<const Release*> by_release_date(const ReleaseMap& releases) {
    std::vector<const Release*> out;
    for (const auto& [id, r] : releases) out.push_back(&r);
    std::stable_sort(out.begin(), out.end(),
                     [](const Release* a, const Release* b) { return a->released_at < b->released_at; });
    return out;
}

std::vector<IssueRecord> release_issues(const Release& release, const std::vector<IssueRecord>& corpus) {
    std::vector<IssueRecord> out;
    for (const IssueRecord& issue : corpus)
        if (std::binary_search(release.issues.begin(), release.issues.end(), issue.key)) out.push_back(issue);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
}

std::vector<IssueRecord> issues_with_prefix(const std::vector<IssueRecord>& corpus, const std::string& release_id) {
    const auto target = parse_release_id(release_id);
    if (!target) throw ConfigError("release id must look like R<major>.<minor>: " + release_id);
    std::vector<IssueRecord> out;
    for (const IssueRecord& issue : corpus) {
        for (const std::string& fv : issue.fix_versions) {
            auto v = parse_version(fv);
            if (v && v->major() == target->major() && v->minor() == target->minor()) {
                out.push_back(issue);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
}

InnovationReport innovation_report(const Release& release, const std::vector<IssueRecord>& corpus) {
    InnovationReport report;
    report.release_id = release.id;
    for (const IssueRecord& issue : release_issues(release, corpus)) {
        if (!issue.resolved()) continue;
        switch (issue.issue_type) {
        case IssueType::feature: ++report.feature_count; break;
        case IssueType::improvement: ++report.improvement_count; break;
        case IssueType::bug: ++report.bug_count; break;
        case IssueType::other: ++report.other_count; break;
        }
        for (const Patch& p : issue.patches) report.change_size_loc += p.net_loc();
    }
    report.cycle_time_days = days_between(release.start_at, release.released_at);
    return report;
}

SummaryStatistics summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("statistics of an empty series");
    const double n = static_cast<double>(values.size());
    SummaryStatistics s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    s.median = sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;

    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / n);
    return s;
}

IssueTypeStatistics issue_type_statistics(const std::vector<InnovationReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("issue type statistics need at least one release");
    auto column = [&](auto&& get) {
        std::vector<double> values;
        for (const auto& r : reports) values.push_back(static_cast<double>(get(r)));
        return summarize(values);
    };
    IssueTypeStatistics out;
    out.feature = column([](const auto& r) { return r.feature_count; });
    out.improvement = column([](const auto& r) { return r.improvement_count; });
    out.bug = column([](const auto& r) { return r.bug_count; });
    out.other = column([](const auto& r) { return r.other_count; });
    out.change_size_loc = column([](const auto& r) { return r.change_size_loc; });
    out.cycle_time_days = column([](const auto& r) { return r.cycle_time_days; });
    return out;
}

std::vector<std::string> RankingSeries::top(std::size_t n) const {
    std::vector<std::pair<std::string, double>> all(accumulated.begin(), accumulated.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < all.size() && i < n; ++i) out.push_back(all[i].first);
    return out;
}

RankingSeries ranking_series(const std::vector<ReleaseValues>& per_release, std::string metric_name) {
    RankingSeries series;
    series.metric_name = std::move(metric_name);
    std::map<std::string, std::pair<double, std::size_t>> rank_sums;
    for (const auto& [release_id, values] : per_release) {
        ReleaseRanking ranking{release_id, {}};
        for (const auto& [id, value] : values) ranking.entries.push_back({id, value, 0});
        // `values` iterates in id order, so a stable sort leaves ties by id.
        std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                         [](const auto& a, const auto& b) { return a.value > b.value; });
        for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
            auto& e = ranking.entries[i];
            e.rank = i + 1;
            auto& [sum, count] = rank_sums[e.stakeholder];
            sum += static_cast<double>(e.rank);
            ++count;
            series.accumulated[e.stakeholder] += e.value;
        }
        series.releases.push_back(std::move(ranking));
    }
    for (const auto& [id, sc] : rank_sums) series.average_rank[id] = sc.first / static_cast<double>(sc.second);
    return series;
}

std::string format_one_decimal(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", value);
    return buf;
}

std::size_t CategoryCrosstab::count(UserCategory a, UserCategory b) const {
    if (b < a) std::swap(a, b);
    auto it = cells.find({a, b});
    return it == cells.end() ? 0 : it->second;
}

std::size_t CategoryCrosstab::labeled_total() const {
    std::size_t total = 0;
    for (const auto& [key, n] : cells) total += n;
    return total;
}

CategoryCrosstab category_crosstab(const std::vector<IssueContribution>& contributions, const AffiliationMap& map) {
    CategoryCrosstab table;
    for (const IssueContribution& c : contributions) {
        std::vector<UserCategory> cats;
        for (const auto& [id, x] : c.shares) cats.push_back(map.category_of(id));
        for (std::size_t i = 0; i < cats.size(); ++i) {
            for (std::size_t j = i + 1; j < cats.size(); ++j) {
                UserCategory a = cats[i];
                UserCategory b = cats[j];
                if (a == UserCategory::unknown || b == UserCategory::unknown) {
                    ++table.unknown_pairs;
                    continue;
                }
                if (b < a) std::swap(a, b);
                ++table.cells[{a, b}];
            }
        }
    }
    return table;
}

double self_implementation_ratio(const std::vector<IssueRecord>& corpus) {
    std::size_t total = 0;
    std::size_t own = 0;
    for (const IssueRecord& issue : corpus) {
        for (const Patch& p : issue.patches) {
            ++total;
            if (p.author_email == issue.reporter_email) ++own;
        }
    }
    if (total == 0) throw std::invalid_argument("self-implementation ratio of a corpus without patches");
    return static_cast<double>(own) / static_cast<double>(total);
}

} // namespace ecograph
