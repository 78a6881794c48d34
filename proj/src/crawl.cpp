#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "ecograph/error.hpp"
#include "ecograph/ingest.hpp"
#include "ecograph/log.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <set>
#include <thread>

namespace ecograph {
namespace {

class JsonScanner {
public:
    explicit JsonScanner(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' ||
                                       text_[pos_] == '\r' || text_[pos_] == '\t'))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    // Returns the raw (still escaped) string contents.
    std::string_view string() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '"') fail();
        const std::size_t start = ++pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') ++pos_;
            ++pos_;
        }
        if (pos_ >= text_.size()) fail();
        return text_.substr(start, pos_++ - start);
    }

    std::string_view value() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) fail();
        const char c = text_[pos_];
        if (c == '"') {
            string();
        } else if (c == '{' || c == '[') {
            int depth = 0;
            while (pos_ < text_.size()) {
                const char d = text_[pos_];
                if (d == '"') {
                    string();
                    continue;
                }
                ++pos_;
                if (d == '{' || d == '[') ++depth;
                if (d == '}' || d == ']') {
                    if (--depth == 0) break;
                }
            }
            if (depth != 0) fail();
        } else {
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
                   text_[pos_] != ']' && text_[pos_] != ' ' && text_[pos_] != '\n' &&
                   text_[pos_] != '\r' && text_[pos_] != '\t')
                ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    [[noreturn]] void fail() const {
        throw Error("malformed JSON near byte " + std::to_string(pos_));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

struct Origin {
    std::string scheme_host_port;
    std::string base_path;
};

Origin split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint must be an absolute URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    Origin o;
    o.scheme_host_port = url.substr(0, path_start);
    o.base_path = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!o.base_path.empty() && o.base_path.back() == '/') o.base_path.pop_back();
    return o;
}

std::string server_message(const httplib::Result& res) {
    try {
        auto body = nlohmann::json::parse(res->body);
        if (auto it = body.find("errorMessages"); it != body.end() && it->is_array() && !it->empty()) {
            std::string msg;
            for (const auto& m : *it) {
                if (!msg.empty()) msg += "; ";
                msg += m.is_string() ? m.get<std::string>() : m.dump();
            }
            return msg;
        }
    } catch (const nlohmann::json::exception&) {
    }
    return res->body.empty() ? res->reason : res->body;
}

class Fetcher {
public:
    Fetcher(const CrawlOptions& options, std::atomic<std::size_t>& retries)
        : options_(options), retries_(retries) {}

    /// GET with retry. Throws HttpClientError on 4xx, Error when attempts run out.
    std::string get(const std::string& url, const httplib::Params& params = {}) const {
        const Origin origin = split_url(url);
        httplib::Client client(origin.scheme_host_port);
        client.set_connection_timeout(options_.timeout);
        client.set_read_timeout(options_.timeout);
        client.set_follow_location(true);
        const httplib::Headers headers{{"Accept", "application/json"}};

        auto backoff = options_.initial_backoff;
        std::string last_error;
        for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
            auto res = client.Get(origin.base_path.empty() ? "/" : origin.base_path, params, headers);
            if (res && res->status >= 200 && res->status < 300) return res->body;
            if (res && res->status >= 400 && res->status < 500 && res->status != 429)
                throw HttpClientError(res->status, server_message(res));

            last_error = res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error());
            if (attempt == options_.max_attempts) break;
            ++retries_;
            log::warn("crawl", "request failed, retrying",
                      {{"url", url}, {"attempt", attempt}, {"error", last_error},
                       {"backoff_ms", backoff.count()}});
            std::this_thread::sleep_for(backoff);
            backoff = std::min(backoff * 2, options_.max_backoff);
        }
        throw Error("giving up on " + url + " after " + std::to_string(options_.max_attempts) +
                    " attempts: " + last_error);
    }

private:
    const CrawlOptions& options_;
    std::atomic<std::size_t>& retries_;
};

struct Page {
    std::size_t start_at = 0;
    std::string body;
};

bool wants_attachment(const nlohmann::json& att) {
    const std::string filename = att.value("filename", "");
    const std::string mime = att.value("mimeType", "");
    auto ends_with = [&](std::string_view suffix) {
        return filename.size() >= suffix.size() &&
               filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    return ends_with(".patch") || ends_with(".diff") || ends_with(".txt") ||
           mime.rfind("text/", 0) == 0;
}

} // namespace

std::vector<std::string_view> split_json_array_member(std::string_view text, std::string_view member) {
    JsonScanner scan(text);
    if (!scan.consume('{')) scan.fail();
    if (scan.consume('}')) return {};
    do {
        const std::string_view key = scan.string();
        if (!scan.consume(':')) scan.fail();
        if (key == member && scan.peek() == '[') {
            std::vector<std::string_view> elements;
            scan.consume('[');
            if (scan.consume(']')) return elements;
            do {
                elements.push_back(scan.value());
            } while (scan.consume(','));
            if (!scan.consume(']')) scan.fail();
            return elements;
        }
        scan.value();
    } while (scan.consume(','));
    return {};
}

std::chrono::seconds http_timeout_from_env() {
    if (const char* env = std::getenv("ECOGRAPH_HTTP_TIMEOUT_SECS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return std::chrono::seconds{v};
        log::warn("crawl", "ignoring invalid ECOGRAPH_HTTP_TIMEOUT_SECS", {{"value", env}});
    }
    return std::chrono::seconds{30};
}

CrawlStats crawl(const CrawlOptions& options, SessionLog& log,
                 const std::function<void(const RawIssueDocument&)>& sink) {
    if (options.page_size == 0) throw ConfigError("page size must be positive");
    std::atomic<std::size_t> retries{0};
    const Fetcher fetcher(options, retries);
    const std::string search_url = split_url(options.endpoint).scheme_host_port +
                                   split_url(options.endpoint).base_path + "/rest/api/2/search";

    auto fetch_page = [&](std::size_t start_at) {
        httplib::Params params{{"jql", options.query},
                               {"startAt", std::to_string(start_at)},
                               {"maxResults", std::to_string(options.page_size)},
                               {"fields", "*all"}};
        return Page{start_at, fetcher.get(search_url, params)};
    };

    CrawlStats stats;
    std::set<std::string> seen;

    // Returns the number of issues on the page.
    auto process = [&](const Page& page) -> std::size_t {
        const auto spans = split_json_array_member(page.body, "issues");
        for (const std::string_view span : spans) {
            RawIssueDocument doc;
            doc.payload = std::string(span);
            const auto issue = nlohmann::json::parse(doc.payload);
            doc.source_id = issue.at("key").get<std::string>();
            if (!seen.insert(doc.source_id).second) continue;
            doc.fetched_at = std::chrono::time_point_cast<std::chrono::milliseconds>(
                std::chrono::system_clock::now());
            if (options.fetch_attachments) {
                const auto& fields = issue.value("fields", nlohmann::json::object());
                for (const auto& att : fields.value("attachment", nlohmann::json::array())) {
                    if (!att.is_object() || !wants_attachment(att) || !att.contains("content")) continue;
                    const auto id = att.at("id");
                    doc.attachments[id.is_string() ? id.get<std::string>() : id.dump()] =
                        fetcher.get(att.at("content").get<std::string>());
                }
            }
            log.append(doc);
            ++stats.documents;
            sink(doc);
        }
        ++stats.pages;
        return spans.size();
    };

    auto abort_at = [&](std::size_t cursor, const std::exception& e) -> CrawlAborted {
        log::event("error", "crawl", "crawl aborted", {{"cursor", cursor}, {"error", e.what()}});
        return CrawlAborted(cursor, std::string(e.what()) + " (resume with start-at " +
                                        std::to_string(cursor) + ")");
    };

    std::size_t cursor = options.start_at;
    Page first;
    try {
        first = fetch_page(cursor);
    } catch (const HttpClientError&) {
        throw;
    } catch (const std::exception& e) {
        throw abort_at(cursor, e);
    }
    const auto total = nlohmann::json::parse(first.body).value("total", std::size_t{0});
    stats.total_reported = total;
    if (process(first) == 0) {
        stats.retries = retries;
        return stats;
    }
    cursor += options.page_size;

    const std::size_t in_flight = std::max<std::size_t>(1, options.max_in_flight);
    while (cursor < total) {
        std::vector<std::future<Page>> batch;
        for (std::size_t k = 0; k < in_flight && cursor + k * options.page_size < total; ++k)
            batch.push_back(std::async(std::launch::async, fetch_page, cursor + k * options.page_size));

        bool exhausted = false;
        for (auto& pending : batch) {
            Page page;
            try {
                page = pending.get();
            } catch (const HttpClientError&) {
                throw;
            } catch (const std::exception& e) {
                for (auto& rest : batch)
                    if (rest.valid()) rest.wait();
                throw abort_at(cursor, e);
            }
            if (exhausted) continue;
            if (process(page) == 0) exhausted = true;
            cursor += options.page_size;
        }
        if (exhausted) break;
    }
    stats.retries = retries;
    log::info("crawl", "crawl finished",
              {{"documents", stats.documents}, {"pages", stats.pages}, {"retries", stats.retries}});
    return stats;
}

} // namespace ecograph
