#include "ecograph/error.hpp"
#include "ecograph/ingest.hpp"
#include "ecograph/unified_diff.hpp"
#include "ecograph/version.hpp"

namespace ecograph {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* name, const std::string& source_id) {
    auto it = obj.find(name);
    if (it == obj.end() || it->is_null())
        throw ParseError(source_id, std::string("missing field ") + name);
    return *it;
}

std::string require_string(const json& obj, const char* name, const std::string& source_id) {
    const json& value = require(obj, name, source_id);
    if (!value.is_string())
        throw ParseError(source_id, std::string("field ") + name + " is not a string");
    return value.get<std::string>();
}

Timestamp require_time(const json& obj, const char* name, const std::string& source_id) {
    auto ts = parse_timestamp(require_string(obj, name, source_id));
    if (!ts) throw ParseError(source_id, std::string("field ") + name + " is not a timestamp");
    return *ts;
}

std::string email_of(const json& user, const char* role, const std::string& source_id) {
    if (!user.is_object()) throw ParseError(source_id, std::string(role) + " is not an object");
    return require_string(user, "emailAddress", source_id);
}

std::string attachment_id(const json& att) {
    auto it = att.find("id");
    if (it == att.end()) return {};
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    return {};
}

} // namespace

IssueRecord parse_issue(const RawIssueDocument& doc, const Warning& warn) {
    const std::string& sid = doc.source_id;
    auto emit = [&](const std::string& msg) {
        if (warn) warn(sid + ": " + msg);
    };

    json root;
    try {
        root = json::parse(doc.payload);
    } catch (const json::parse_error& e) {
        throw ParseError(sid, std::string("malformed payload: ") + e.what());
    }
    if (!root.is_object()) throw ParseError(sid, "payload is not a JSON object");

    IssueRecord issue;
    issue.key = require_string(root, "key", sid);
    if (issue.key.empty()) throw ParseError(sid, "empty issue key");
    const json& fields = require(root, "fields", sid);
    if (!fields.is_object()) throw ParseError(sid, "fields is not an object");

    if (auto it = fields.find("issuetype"); it != fields.end() && it->is_object()) {
        issue.issue_type = issue_type_from_tracker(it->value("name", ""));
    }

    if (auto it = fields.find("fixVersions"); it != fields.end() && it->is_array()) {
        for (const auto& v : *it) {
            std::string name = v.is_object() ? v.value("name", "") : "";
            if (parse_version(name)) {
                issue.fix_versions.push_back(std::move(name));
            } else {
                emit("ignoring non-numeric fix version '" + name + "'");
            }
        }
    }

    issue.created_at = require_time(fields, "created", sid);
    if (auto it = fields.find("resolutiondate"); it != fields.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError(sid, "resolutiondate is not a string");
        auto ts = parse_timestamp(it->get<std::string>());
        if (!ts) throw ParseError(sid, "resolutiondate is not a timestamp");
        if (*ts < issue.created_at) throw ParseError(sid, "resolutiondate precedes created");
        issue.resolved_at = ts;
    }
    issue.reporter_email = email_of(require(fields, "reporter", sid), "reporter", sid);

    if (auto it = fields.find("attachment"); it != fields.end() && it->is_array()) {
        for (const auto& att : *it) {
            if (!att.is_object()) throw ParseError(sid, "attachment is not an object");
            const std::string filename = att.value("filename", "");
            const std::string id = attachment_id(att);

            const std::string* body = nullptr;
            if (auto b = doc.attachments.find(id); !id.empty() && b != doc.attachments.end()) {
                body = &b->second;
            } else if (auto inl = att.find("body"); inl != att.end() && inl->is_string()) {
                body = inl->get_ptr<const std::string*>();
            }
            const std::string_view content = body ? std::string_view(*body) : std::string_view{};
            if (!is_patch_attachment(filename, content)) continue;

            Patch patch;
            patch.author_email = email_of(require(att, "author", sid), "attachment author", sid);
            patch.submitted_at = require_time(att, "created", sid);
            if (body == nullptr) {
                emit("patch " + filename + " has no fetched content; counted as 0 LOC");
            } else {
                const DiffStat stat = count_diff_lines(content);
                if (stat.has_hunks) {
                    patch.added_loc = stat.added;
                    patch.deleted_loc = stat.deleted;
                } else if (stat.binary_files == 0) {
                    emit("patch " + filename + " has no parseable hunks; counted as 0 LOC");
                }
            }
            issue.patches.push_back(std::move(patch));
        }
    }
    return issue;
}

} // namespace ecograph
