#include "ecograph/records.hpp"
#include "ecograph/version.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ecograph {

std::string_view to_string(IssueType type) noexcept {
    switch (type) {
    case IssueType::feature: return "feature";
    case IssueType::improvement: return "improvement";
    case IssueType::bug: return "bug";
    case IssueType::other: break;
    }
    return "other";
}

std::optional<IssueType> issue_type_from_canonical(std::string_view name) noexcept {
    if (name == "feature") return IssueType::feature;
    if (name == "improvement") return IssueType::improvement;
    if (name == "bug") return IssueType::bug;
    if (name == "other") return IssueType::other;
    return std::nullopt;
}

IssueType issue_type_from_tracker(std::string_view name) noexcept {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "new feature" || lower == "feature") return IssueType::feature;
    if (lower == "improvement") return IssueType::improvement;
    if (lower == "bug") return IssueType::bug;
    return IssueType::other;
}

std::string Version::release_id() const {
    return "R" + std::to_string(major()) + "." + std::to_string(minor());
}

std::optional<Version> parse_version(std::string_view text) {
    Version v;
    std::size_t pos = 0;
    while (true) {
        int part = 0;
        const char* first = text.data() + pos;
        const char* last = text.data() + text.size();
        if (first == last || *first < '0' || *first > '9') return std::nullopt;
        auto r = std::from_chars(first, last, part);
        if (r.ec != std::errc{}) return std::nullopt;
        v.parts.push_back(part);
        pos = static_cast<std::size_t>(r.ptr - text.data());
        if (pos == text.size()) break;
        if (text[pos] != '.') return std::nullopt;
        ++pos;
    }
    if (v.parts.size() < 2) return std::nullopt;
    return v;
}

std::optional<Version> parse_release_id(std::string_view id) {
    if (id.empty() || id.front() != 'R') return std::nullopt;
    auto v = parse_version(id.substr(1));
    if (!v || v->parts.size() != 2) return std::nullopt;
    return v;
}

} // namespace ecograph
