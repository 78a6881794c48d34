#include "ecograph/error.hpp"
#include "ecograph/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

namespace ecograph {

SessionLog::SessionLog(std::filesystem::path file) : file_(std::move(file)) {
    if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
}

void SessionLog::append(const RawIssueDocument& doc) {
    nlohmann::ordered_json line;
    line["source_id"] = doc.source_id;
    line["fetched_at"] = format_timestamp(doc.fetched_at);
    line["payload"] = doc.payload;
    line["attachments"] = doc.attachments;
    std::ofstream out(file_, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot append to " + file_.string());
    out << line.dump() << '\n';
    out.flush();
    if (!out) throw Error("write failed on " + file_.string());
}

std::vector<RawIssueDocument> SessionLog::load() const {
    std::vector<RawIssueDocument> docs;
    std::ifstream in(file_, std::ios::binary);
    if (!in) return docs;
    std::string text;
    while (std::getline(in, text)) {
        if (text.empty()) continue;
        auto obj = nlohmann::json::parse(text);
        RawIssueDocument doc;
        doc.source_id = obj.at("source_id").get<std::string>();
        doc.fetched_at = parse_timestamp_or_throw(obj.at("fetched_at").get<std::string>());
        doc.payload = obj.at("payload").get<std::string>();
        doc.attachments = obj.value("attachments", std::map<std::string, std::string>{});
        docs.push_back(std::move(doc));
    }
    return docs;
}

RecordStore::RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path RecordStore::file_for(const std::string& key) const {
    std::string name;
    for (unsigned char c : key) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
            name.push_back(static_cast<char>(c));
        } else {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%%%02X", c);
            name += buf;
        }
    }
    return dir_ / (name + ".json");
}

void RecordStore::put(const IssueRecord& issue) {
    const auto target = file_for(issue.key);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << to_canonical_json(issue).dump() << '\n';
    }
    std::filesystem::rename(tmp, target);
}

std::optional<IssueRecord> RecordStore::get(const std::string& key) const {
    std::ifstream in(file_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    return from_canonical_json(nlohmann::json::parse(in), 1);
}

std::vector<IssueRecord> RecordStore::all() const {
    std::vector<IssueRecord> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        out.push_back(from_canonical_json(nlohmann::json::parse(in), 1));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
}

} // namespace ecograph
