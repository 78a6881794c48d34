#include "ecograph/unified_diff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ecograph {
namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

bool ends_with_ci(std::string_view s, std::string_view suffix) {
    if (s.size() < suffix.size()) return false;
    return std::equal(suffix.begin(), suffix.end(), s.end() - suffix.size(),
                      [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) ==
                                 std::tolower(static_cast<unsigned char>(b));
                      });
}

// "@@ -12,5 +12,7 @@ ..." -> old/new line counts; a missing count means 1.
bool parse_hunk_header(std::string_view line, std::int64_t& old_count, std::int64_t& new_count) {
    auto read_range = [&](std::size_t& pos, char sign, std::int64_t& count) {
        while (pos < line.size() && line[pos] == ' ') ++pos;
        if (pos >= line.size() || line[pos] != sign) return false;
        ++pos;
        std::int64_t start = 0;
        auto r = std::from_chars(line.data() + pos, line.data() + line.size(), start);
        if (r.ec != std::errc{}) return false;
        pos = static_cast<std::size_t>(r.ptr - line.data());
        count = 1;
        if (pos < line.size() && line[pos] == ',') {
            ++pos;
            r = std::from_chars(line.data() + pos, line.data() + line.size(), count);
            if (r.ec != std::errc{}) return false;
            pos = static_cast<std::size_t>(r.ptr - line.data());
        }
        return true;
    };
    std::size_t pos = 2;
    return read_range(pos, '-', old_count) && read_range(pos, '+', new_count);
}

bool is_file_boundary(std::string_view line) {
    return starts_with(line, "diff ") || starts_with(line, "Index: ") ||
           starts_with(line, "--- ") || starts_with(line, "+++ ");
}

} // namespace

DiffStat count_diff_lines(std::string_view diff) {
    DiffStat stat;
    enum class Mode { header, hunk, loose } mode = Mode::header;
    std::int64_t old_left = 0;
    std::int64_t new_left = 0;

    std::size_t pos = 0;
    while (pos < diff.size()) {
        std::size_t eol = diff.find('\n', pos);
        if (eol == std::string_view::npos) eol = diff.size();
        std::string_view line = diff.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;

        if (mode == Mode::hunk) {
            if (line.empty() || line[0] == ' ') {
                --old_left;
                --new_left;
            } else if (line[0] == '-') {
                ++stat.deleted;
                --old_left;
            } else if (line[0] == '+') {
                ++stat.added;
                --new_left;
            } else if (line[0] != '\\') {
                // Truncated hunk; reinterpret this line as a header.
                mode = Mode::header;
            }
            if (mode == Mode::hunk) {
                if (old_left <= 0 && new_left <= 0) mode = Mode::header;
                continue;
            }
        }

        if (mode == Mode::loose) {
            if (starts_with(line, "@@") || (is_file_boundary(line) && !starts_with(line, "--- ") &&
                                            !starts_with(line, "+++ "))) {
                mode = Mode::header;
            } else if (starts_with(line, "+++") || starts_with(line, "---")) {
                continue;
            } else if (!line.empty() && line[0] == '+') {
                ++stat.added;
                continue;
            } else if (!line.empty() && line[0] == '-') {
                ++stat.deleted;
                continue;
            } else {
                continue;
            }
        }

        if (starts_with(line, "@@")) {
            stat.has_hunks = true;
            if (parse_hunk_header(line, old_left, new_left)) {
                mode = (old_left > 0 || new_left > 0) ? Mode::hunk : Mode::header;
            } else {
                mode = Mode::loose;
            }
        } else if (starts_with(line, "diff ") || starts_with(line, "Index: ")) {
            ++stat.files;
        } else if (starts_with(line, "Binary files ") || starts_with(line, "GIT binary patch") ||
                   starts_with(line, "Cannot display: file marked as a binary type")) {
            ++stat.binary_files;
        }
    }
    return stat;
}

bool looks_like_unified_diff(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size() && (text[pos] == '\n' || text[pos] == '\r')) ++pos;
    std::string_view head = text.substr(pos);
    if (starts_with(head, "diff ") || starts_with(head, "Index: ") || starts_with(head, "--- "))
        return true;
    // git format-patch mbox header: "From <40 hex sha> ..."
    if (starts_with(head, "From ") && head.size() >= 45) {
        return std::all_of(head.begin() + 5, head.begin() + 45, [](char c) {
            return std::isxdigit(static_cast<unsigned char>(c)) != 0;
        });
    }
    return false;
}

bool is_patch_attachment(std::string_view filename, std::string_view content) {
    return ends_with_ci(filename, ".patch") || ends_with_ci(filename, ".diff") ||
           looks_like_unified_diff(content);
}

} // namespace ecograph
