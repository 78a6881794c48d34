#pragma once

#include "ecograph/records.hpp"

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ecograph {

using Warning = std::function<void(const std::string&)>;

// ---------------------------------------------------------------------------
// Tracker documents
// ---------------------------------------------------------------------------

/// Normalizes one JIRA issue document. Attachment bodies come from
/// `doc.attachments` (keyed by attachment id) or an inline "body" string.
/// Throws ParseError carrying doc.source_id on malformed payloads.
IssueRecord parse_issue(const RawIssueDocument& doc, const Warning& warn = {});

// ---------------------------------------------------------------------------
// Canonical JSONL
// ---------------------------------------------------------------------------

nlohmann::ordered_json to_canonical_json(const IssueRecord& issue);

/// `line` is only used for error messages.
IssueRecord from_canonical_json(const nlohmann::json& obj, std::size_t line);

std::vector<IssueRecord> read_jsonl(std::istream& in);
std::vector<IssueRecord> import_jsonl(const std::filesystem::path& path);

void write_jsonl(std::ostream& out, const std::vector<IssueRecord>& issues);
void export_jsonl(const std::filesystem::path& path, const std::vector<IssueRecord>& issues);

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

/// Append-only log of raw documents, one JSON object per line.
class SessionLog {
public:
    explicit SessionLog(std::filesystem::path file);

    void append(const RawIssueDocument& doc);
    std::vector<RawIssueDocument> load() const;
    const std::filesystem::path& path() const noexcept { return file_; }

private:
    std::filesystem::path file_;
};

/// Keyed store of normalized records: one canonical JSON file per issue key.
class RecordStore {
public:
    explicit RecordStore(std::filesystem::path dir);

    void put(const IssueRecord& issue);
    std::optional<IssueRecord> get(const std::string& key) const;
    /// All records, sorted by key.
    std::vector<IssueRecord> all() const;

private:
    std::filesystem::path file_for(const std::string& key) const;

    std::filesystem::path dir_;
};

// ---------------------------------------------------------------------------
// Crawling
// ---------------------------------------------------------------------------

struct CrawlOptions {
    std::string endpoint;  // e.g. "http://localhost:8080" or "https://issues.apache.org/jira"
    std::string query;     // JQL
    std::size_t page_size = 50;
    std::size_t start_at = 0;        // resume cursor
    std::size_t max_in_flight = 4;   // concurrent page requests
    int max_attempts = 5;
    std::chrono::milliseconds initial_backoff{200};
    std::chrono::milliseconds max_backoff{5000};
    std::chrono::seconds timeout{30};
    bool fetch_attachments = true;
};

struct CrawlStats {
    std::size_t documents = 0;
    std::size_t pages = 0;
    std::size_t retries = 0;
    std::size_t total_reported = 0;
};

/// Seconds from ECOGRAPH_HTTP_TIMEOUT_SECS, default 30.
std::chrono::seconds http_timeout_from_env();

/// Pages through the tracker search API. Each document is appended to `log`
/// before `sink` sees it. Network failures are retried with exponential
/// backoff; when retries run out CrawlAborted is thrown with the resume cursor.
/// HTTP 4xx raises HttpClientError immediately.
CrawlStats crawl(const CrawlOptions& options, SessionLog& log,
                 const std::function<void(const RawIssueDocument&)>& sink);

/// Splits the top-level elements of the JSON array stored under `member` in
/// `text`, returning each element's exact byte span.
std::vector<std::string_view> split_json_array_member(std::string_view text, std::string_view member);

} // namespace ecograph
