#pragma once

#include <cstdint>
#include <string_view>

namespace ecograph {

struct DiffStat {
    std::int64_t added = 0;
    std::int64_t deleted = 0;
    std::int64_t files = 0;
    std::int64_t binary_files = 0;
    bool has_hunks = false;

    friend bool operator==(const DiffStat&, const DiffStat&) = default;
};

/// Counts added/deleted lines inside unified-diff hunks. Header lines
/// ("+++", "---") outside hunks are not counted; binary file sections
/// contribute nothing. Accepts git, svn and plain `diff -u` output.
DiffStat count_diff_lines(std::string_view diff);

/// True if `text` starts (after leading blank lines) with a unified-diff header.
bool looks_like_unified_diff(std::string_view text);

/// Patch attachment test: .patch/.diff filename, or diff-looking content.
bool is_patch_attachment(std::string_view filename, std::string_view content);

} // namespace ecograph
