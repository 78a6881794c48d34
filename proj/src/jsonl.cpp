#include "ecograph/error.hpp"
#include "ecograph/ingest.hpp"

#include <fstream>
#include <set>

namespace ecograph {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* name, std::size_t line, const std::string& prefix = {}) {
    auto it = obj.find(name);
    if (it == obj.end()) throw SchemaError(line, prefix + name, "missing field " + prefix + name);
    return *it;
}

std::string string_field(const json& obj, const char* name, std::size_t line,
                         const std::string& prefix = {}) {
    const json& v = field(obj, name, line, prefix);
    if (!v.is_string())
        throw SchemaError(line, prefix + name, "field " + prefix + name + " must be a string");
    return v.get<std::string>();
}

Timestamp time_field(const json& obj, const char* name, std::size_t line, const std::string& prefix = {}) {
    auto ts = parse_timestamp(string_field(obj, name, line, prefix));
    if (!ts)
        throw SchemaError(line, prefix + name, "field " + prefix + name + " must be an RFC 3339 timestamp");
    return *ts;
}

std::int64_t count_field(const json& obj, const char* name, std::size_t line, const std::string& prefix) {
    const json& v = field(obj, name, line, prefix);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw SchemaError(line, prefix + name, "field " + prefix + name + " must be a nonnegative integer");
    return v.get<std::int64_t>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::size_t line,
                    const std::string& prefix = {}) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw SchemaError(line, prefix + item.key(), "unknown field " + prefix + item.key());
    }
}

} // namespace

nlohmann::ordered_json to_canonical_json(const IssueRecord& issue) {
    nlohmann::ordered_json out;
    out["key"] = issue.key;
    out["type"] = std::string(to_string(issue.issue_type));
    out["fix_versions"] = issue.fix_versions;
    out["created_at"] = format_timestamp(issue.created_at);
    out["resolved_at"] = issue.resolved_at ? nlohmann::ordered_json(format_timestamp(*issue.resolved_at))
                                           : nlohmann::ordered_json(nullptr);
    out["reporter_email"] = issue.reporter_email;
    auto patches = nlohmann::ordered_json::array();
    for (const Patch& p : issue.patches) {
        nlohmann::ordered_json jp;
        jp["author_email"] = p.author_email;
        jp["added_loc"] = p.added_loc;
        jp["deleted_loc"] = p.deleted_loc;
        jp["submitted_at"] = format_timestamp(p.submitted_at);
        if (!p.approved) jp["approved"] = false;
        patches.push_back(std::move(jp));
    }
    out["patches"] = std::move(patches);
    return out;
}

IssueRecord from_canonical_json(const json& obj, std::size_t line) {
    if (!obj.is_object()) throw SchemaError(line, "", "line is not a JSON object");
    reject_unknown(obj, {"key", "type", "fix_versions", "created_at", "resolved_at", "reporter_email", "patches"},
                   line);

    IssueRecord issue;
    issue.key = string_field(obj, "key", line);
    if (issue.key.empty()) throw SchemaError(line, "key", "field key must be non-empty");

    const std::string type = string_field(obj, "type", line);
    auto parsed_type = issue_type_from_canonical(type);
    if (!parsed_type) throw SchemaError(line, "type", "field type has invalid value '" + type + "'");
    issue.issue_type = *parsed_type;

    const json& versions = field(obj, "fix_versions", line);
    if (!versions.is_array()) throw SchemaError(line, "fix_versions", "field fix_versions must be an array");
    for (const auto& v : versions) {
        if (!v.is_string())
            throw SchemaError(line, "fix_versions", "field fix_versions must contain strings");
        issue.fix_versions.push_back(v.get<std::string>());
    }

    issue.created_at = time_field(obj, "created_at", line);
    const json& resolved = field(obj, "resolved_at", line);
    if (!resolved.is_null()) {
        issue.resolved_at = time_field(obj, "resolved_at", line);
        if (*issue.resolved_at < issue.created_at)
            throw SchemaError(line, "resolved_at", "field resolved_at precedes created_at");
    }
    issue.reporter_email = string_field(obj, "reporter_email", line);

    const json& patches = field(obj, "patches", line);
    if (!patches.is_array()) throw SchemaError(line, "patches", "field patches must be an array");
    for (std::size_t i = 0; i < patches.size(); ++i) {
        const json& jp = patches[i];
        const std::string prefix = "patches[" + std::to_string(i) + "].";
        if (!jp.is_object()) throw SchemaError(line, "patches", "patch entries must be objects");
        reject_unknown(jp, {"author_email", "added_loc", "deleted_loc", "submitted_at", "approved"}, line, prefix);
        Patch p;
        p.author_email = string_field(jp, "author_email", line, prefix);
        p.added_loc = count_field(jp, "added_loc", line, prefix);
        p.deleted_loc = count_field(jp, "deleted_loc", line, prefix);
        p.submitted_at = time_field(jp, "submitted_at", line, prefix);
        if (auto it = jp.find("approved"); it != jp.end()) {
            if (!it->is_boolean())
                throw SchemaError(line, prefix + "approved", "field " + prefix + "approved must be a boolean");
            p.approved = it->get<bool>();
        }
        issue.patches.push_back(std::move(p));
    }
    return issue;
}

std::vector<IssueRecord> read_jsonl(std::istream& in) {
    std::vector<IssueRecord> out;
    std::map<std::string, std::size_t> seen;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::parse_error& e) {
            throw SchemaError(line, "", std::string("invalid JSON: ") + e.what());
        }
        IssueRecord issue = from_canonical_json(obj, line);
        if (auto [it, inserted] = seen.emplace(issue.key, line); !inserted) {
            throw SchemaError(line, "key",
                              "duplicate key " + issue.key + " (first seen on line " + std::to_string(it->second) + ")");
        }
        out.push_back(std::move(issue));
    }
    return out;
}

std::vector<IssueRecord> import_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_jsonl(in);
}

void write_jsonl(std::ostream& out, const std::vector<IssueRecord>& issues) {
    for (const auto& issue : issues) out << to_canonical_json(issue).dump() << '\n';
}

void export_jsonl(const std::filesystem::path& path, const std::vector<IssueRecord>& issues) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    write_jsonl(out, issues);
}

} // namespace ecograph
