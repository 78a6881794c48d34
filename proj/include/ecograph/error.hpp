#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecograph {

/// Base class for every error raised by the toolchain.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A raw tracker document could not be turned into an IssueRecord.
class ParseError : public Error {
public:
    ParseError(std::string source_id, const std::string& what)
        : Error(source_id + ": " + what), source_id_(std::move(source_id)) {}

    const std::string& source_id() const noexcept { return source_id_; }

private:
    std::string source_id_;
};

/// A canonical JSONL line violated the schema or a corpus invariant.
class SchemaError : public Error {
public:
    SchemaError(std::size_t line, std::string field, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what),
          line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Tracker rejected the request (HTTP 4xx); never retried.
class HttpClientError : public Error {
public:
    HttpClientError(int status, const std::string& message)
        : Error("HTTP " + std::to_string(status) + ": " + message), status_(status) {}

    int status() const noexcept { return status_; }

private:
    int status_;
};

/// Crawl gave up after exhausting retries. `cursor` is the startAt offset
/// of the first page that was not fully persisted.
class CrawlAborted : public Error {
public:
    CrawlAborted(std::size_t cursor, const std::string& what)
        : Error(what), cursor_(cursor) {}

    std::size_t cursor() const noexcept { return cursor_; }

private:
    std::size_t cursor_;
};

} // namespace ecograph
