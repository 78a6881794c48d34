#include "ecograph/error.hpp"
#include "ecograph/ingest.hpp"
#include "ecograph/unified_diff.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace ecograph;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path kDiffs = fs::path(ECOGRAPH_FIXTURE_DIR) / "diffs";

std::string diff_adding(int added, int deleted) {
    std::string out = "--- a/f.txt\n+++ b/f.txt\n@@ -1," + std::to_string(deleted + 1) + " +1," +
                      std::to_string(added + 1) + " @@\n context\n";
    for (int i = 0; i < deleted; ++i) out += "-old line " + std::to_string(i) + "\n";
    for (int i = 0; i < added; ++i) out += "+new line " + std::to_string(i) + "\n";
    return out;
}

nlohmann::json jira_attachment(const std::string& id, const std::string& filename, const std::string& author,
                               const std::string& created) {
    return {{"id", id},
            {"filename", filename},
            {"author", {{"emailAddress", author}}},
            {"created", created},
            {"content", "https://tracker.example/secure/attachment/" + id + "/" + filename}};
}

RawIssueDocument jira_doc(const std::string& key, nlohmann::json attachments,
                          std::map<std::string, std::string> bodies = {}) {
    nlohmann::json issue = {
        {"key", key},
        {"fields",
         {{"issuetype", {{"name", "New Feature"}}},
          {"fixVersions", nlohmann::json::array({{{"name", "2.7.1"}}})},
          {"created", "2015-03-01T10:00:00.000+0000"},
          {"resolutiondate", "2015-03-05T08:30:00.000+0200"},
          {"reporter", {{"emailAddress", "alice@hortonworks.com"}}},
          {"attachment", std::move(attachments)}}}};
    return RawIssueDocument{key, issue.dump(), {}, std::move(bodies)};
}

} // namespace

TEST_CASE("timestamps normalize to UTC") {
    auto ts = parse_timestamp("2015-03-05T08:30:00.000+0200");
    REQUIRE(ts);
    CHECK(format_timestamp(*ts) == "2015-03-05T06:30:00Z");
    CHECK(format_timestamp(parse_timestamp_or_throw("2013-10-15T00:00:00Z")) == "2013-10-15T00:00:00Z");
    CHECK(format_timestamp(parse_timestamp_or_throw("2014-01-01T00:00:00.250-05:30")) == "2014-01-01T05:30:00.250Z");
    CHECK_FALSE(parse_timestamp("2015-02-30T00:00:00Z"));
    CHECK_FALSE(parse_timestamp("2015-03-05 08:30"));
    CHECK_FALSE(parse_timestamp("2015-03-05T08:30:00"));
    CHECK_THROWS_AS(parse_timestamp_or_throw("yesterday"), std::invalid_argument);
}

TEST_CASE("diff line counts agree with the naive counter on fixture diffs") {
    for (const char* name : {"add_only.diff", "delete_only.patch", "balanced.diff", "binary_only.patch"}) {
        CAPTURE(name);
        const std::string text = read_file(kDiffs / name);
        const auto [added, deleted] = oracle::naive_diff_count(text);
        const DiffStat stat = count_diff_lines(text);
        CHECK(stat.added == added);
        CHECK(stat.deleted == deleted);
    }
}

TEST_CASE("fixture diffs count (+10/-0), (+0/-4), (+7/-7)") {
    CHECK(count_diff_lines(read_file(kDiffs / "add_only.diff")) == DiffStat{10, 0, 1, 0, true});
    CHECK(count_diff_lines(read_file(kDiffs / "delete_only.patch")) == DiffStat{0, 4, 1, 0, true});
    CHECK(count_diff_lines(read_file(kDiffs / "balanced.diff")) == DiffStat{7, 7, 0, 0, true});
}

TEST_CASE("hunk-aware counting ignores text outside hunks") {
    // The format-patch signature "-- " sits after the last hunk; the naive
    // counter takes it for a deletion.
    const std::string text = read_file(kDiffs / "multi_file.patch");
    const DiffStat stat = count_diff_lines(text);
    CHECK(stat.added == 7);
    CHECK(stat.deleted == 4);
    CHECK(stat.files == 3);
    CHECK(stat.binary_files == 1);
    CHECK(oracle::naive_diff_count(text) == std::pair<std::int64_t, std::int64_t>{7, 5});

    // A removed line whose content starts with "--" is still a deletion.
    CHECK(count_diff_lines("--- a/x.sql\n+++ b/x.sql\n@@ -1,2 +1,1 @@\n--- comment\n keep\n").deleted == 1);
}

TEST_CASE("binary-only patches contribute nothing") {
    const DiffStat stat = count_diff_lines(read_file(kDiffs / "binary_only.patch"));
    CHECK(stat.added == 0);
    CHECK(stat.deleted == 0);
    CHECK(stat.binary_files == 1);
    CHECK_FALSE(stat.has_hunks);
}

TEST_CASE("patch attachment classification") {
    CHECK(is_patch_attachment("HDFS-5123.003.patch", ""));
    CHECK(is_patch_attachment("fix.DIFF", ""));
    CHECK(is_patch_attachment("notes.txt", "\ndiff --git a/x b/x\n"));
    CHECK(is_patch_attachment("changes.txt", "Index: foo.c\n===\n"));
    CHECK_FALSE(is_patch_attachment("screenshot.png", "\x89PNG"));
    CHECK_FALSE(is_patch_attachment("log.txt", "2015-01-01 INFO started"));
}

TEST_CASE("parse_issue: one attachment adding 100 and deleting 50 lines") {
    auto doc = jira_doc("HADOOP-1234", nlohmann::json::array({jira_attachment(
                                           "9001", "HADOOP-1234.patch", "bob@yahoo-inc.com",
                                           "2015-03-02T11:00:00.000+0000")}),
                        {{"9001", diff_adding(100, 50)}});
    const IssueRecord issue = parse_issue(doc);
    CHECK(issue.key == "HADOOP-1234");
    CHECK(issue.issue_type == IssueType::feature);
    CHECK(issue.fix_versions == std::vector<std::string>{"2.7.1"});
    CHECK(issue.reporter_email == "alice@hortonworks.com");
    REQUIRE(issue.resolved_at);
    CHECK(format_timestamp(*issue.resolved_at) == "2015-03-05T06:30:00Z");
    REQUIRE(issue.patches.size() == 1);
    CHECK(issue.patches[0].author_email == "bob@yahoo-inc.com");
    CHECK(issue.patches[0].added_loc == 100);
    CHECK(issue.patches[0].deleted_loc == 50);
    CHECK(format_timestamp(issue.patches[0].submitted_at) == "2015-03-02T11:00:00Z");
}

TEST_CASE("parse_issue: no attachments") {
    const IssueRecord issue = parse_issue(jira_doc("HADOOP-1", nlohmann::json::array()));
    CHECK(issue.patches.empty());
}

TEST_CASE("parse_issue: three diff attachments give net 10, -4, 0") {
    auto atts = nlohmann::json::array({
        jira_attachment("1", "a.patch", "a@x.org", "2015-03-02T00:00:00.000+0000"),
        jira_attachment("2", "b.diff", "b@x.org", "2015-03-03T00:00:00.000+0000"),
        jira_attachment("3", "c.patch", "c@x.org", "2015-03-04T00:00:00.000+0000"),
        jira_attachment("4", "screenshot.png", "d@x.org", "2015-03-04T00:00:00.000+0000"),
    });
    auto doc = jira_doc("HADOOP-7", atts,
                        {{"1", read_file(kDiffs / "add_only.diff")},
                         {"2", read_file(kDiffs / "delete_only.patch")},
                         {"3", read_file(kDiffs / "balanced.diff")},
                         {"4", "\x89PNG\r\n"}});
    const IssueRecord issue = parse_issue(doc);
    REQUIRE(issue.patches.size() == 3);
    CHECK(issue.patches[0].net_loc() == 10);
    CHECK(issue.patches[1].net_loc() == -4);
    CHECK(issue.patches[2].net_loc() == 0);
}

TEST_CASE("parse_issue: inline bodies, unknown types, unparseable diffs") {
    auto att = jira_attachment("5", "broken.patch", "e@x.org", "2015-03-02T00:00:00.000+0000");
    att["body"] = "this is not a diff at all\n";
    auto doc = jira_doc("HADOOP-8", nlohmann::json::array({att}));
    auto payload = nlohmann::json::parse(doc.payload);
    payload["fields"]["issuetype"]["name"] = "Sub-task";
    payload["fields"]["fixVersions"].push_back({{"name", "3.0.0-alpha1"}});
    doc.payload = payload.dump();

    std::vector<std::string> warnings;
    const IssueRecord issue = parse_issue(doc, [&](const std::string& w) { warnings.push_back(w); });
    CHECK(issue.issue_type == IssueType::other);
    CHECK(issue.fix_versions == std::vector<std::string>{"2.7.1"});
    REQUIRE(issue.patches.size() == 1);
    CHECK(issue.patches[0].added_loc == 0);
    CHECK(issue.patches[0].deleted_loc == 0);
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("3.0.0-alpha1") != std::string::npos);
    CHECK(warnings[1].find("broken.patch") != std::string::npos);
}

TEST_CASE("parse_issue: malformed payloads carry the source id") {
    RawIssueDocument doc{"HADOOP-99", "{\"key\": \"HADOOP-99\", \"fields\": ", {}, {}};
    try {
        parse_issue(doc);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.source_id() == "HADOOP-99");
    }
    doc.payload = R"({"key": "HADOOP-99", "fields": {"reporter": {"emailAddress": "a@b.c"}}})";
    CHECK_THROWS_WITH_AS(parse_issue(doc), "HADOOP-99: missing field created", ParseError);
}

TEST_CASE("parse_issue is deterministic") {
    auto doc = jira_doc("HADOOP-5", nlohmann::json::array({jira_attachment(
                                        "1", "x.patch", "a@x.org", "2015-03-02T00:00:00.000+0000")}),
                        {{"1", diff_adding(3, 1)}});
    CHECK(parse_issue(doc) == parse_issue(RawIssueDocument(doc)));
}

TEST_CASE("import_jsonl: happy path and schema errors") {
    const std::string good =
        R"({"key":"X-1","type":"bug","fix_versions":["2.6.0"],"created_at":"2014-01-01T00:00:00Z","resolved_at":null,"reporter_email":"a@b.com","patches":[]})"
        "\n"
        R"({"key":"X-2","type":"feature","fix_versions":[],"created_at":"2014-01-01T00:00:00Z","resolved_at":"2014-02-01T00:00:00Z","reporter_email":"a@b.com","patches":[{"author_email":"c@d.com","added_loc":5,"deleted_loc":2,"submitted_at":"2014-01-02T00:00:00Z"}]})"
        "\n";
    std::istringstream in(good);
    const auto issues = read_jsonl(in);
    REQUIRE(issues.size() == 2);
    CHECK(issues[1].patches.at(0).net_loc() == 3);

    std::istringstream missing_key(
        R"({"type":"bug","fix_versions":[],"created_at":"2014-01-01T00:00:00Z","resolved_at":null,"reporter_email":"a@b.com","patches":[]})");
    CHECK_THROWS_WITH_AS(read_jsonl(missing_key), "line 1: missing field key", SchemaError);

    const std::string line =
        R"(,"type":"bug","fix_versions":[],"created_at":"2014-01-01T00:00:00Z","resolved_at":null,"reporter_email":"a@b.com","patches":[]})";
    std::istringstream dup("{\"key\":\"X-1\"" + line + "\n{\"key\":\"X-2\"" + line + "\n{\"key\":\"X-1\"" + line + "\n");
    try {
        read_jsonl(dup);
        FAIL("expected duplicate key error");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("X-1") != std::string::npos);
        CHECK(e.line() == 3);
    }

    std::istringstream bad_type("{\"key\":\"X-1\"" + std::string(line).replace(9, 3, "epic") + "\n");
    CHECK_THROWS_AS(read_jsonl(bad_type), SchemaError);

    std::istringstream negative(
        R"({"key":"X-3","type":"bug","fix_versions":[],"created_at":"2014-01-01T00:00:00Z","resolved_at":null,"reporter_email":"a@b.com","patches":[{"author_email":"c@d.com","added_loc":-1,"deleted_loc":2,"submitted_at":"2014-01-02T00:00:00Z"}]})");
    try {
        read_jsonl(negative);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "patches[0].added_loc");
    }

    std::istringstream backwards(
        R"({"key":"X-4","type":"bug","fix_versions":[],"created_at":"2014-01-02T00:00:00Z","resolved_at":"2014-01-01T00:00:00Z","reporter_email":"a@b.com","patches":[]})");
    CHECK_THROWS_AS(read_jsonl(backwards), SchemaError);
}

TEST_CASE("canonical JSONL round-trips random records") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::int64_t> loc(0, 5000);
    std::uniform_int_distribution<std::int64_t> ms(1'300'000'000'000, 1'500'000'000'000);
    for (int round = 0; round < 50; ++round) {
        std::vector<IssueRecord> issues;
        for (int i = 0; i < 8; ++i) {
            IssueRecord r;
            r.key = "K-" + std::to_string(round) + "-" + std::to_string(i);
            r.issue_type = static_cast<IssueType>(rng() % 4);
            for (std::uint64_t v = 0; v < rng() % 3; ++v) r.fix_versions.push_back("2." + std::to_string(rng() % 9) + ".0");
            r.created_at = Timestamp{std::chrono::milliseconds{ms(rng)}};
            if (rng() % 2) r.resolved_at = r.created_at + std::chrono::milliseconds{loc(rng) * 1000 + 7};
            r.reporter_email = "u" + std::to_string(rng() % 10) + "@ex\"ample.org";
            for (std::uint64_t p = 0; p < rng() % 4; ++p) {
                Patch patch{"p" + std::to_string(rng() % 10) + "@x.org", loc(rng), loc(rng),
                            Timestamp{std::chrono::milliseconds{ms(rng)}}, rng() % 5 != 0};
                r.patches.push_back(std::move(patch));
            }
            issues.push_back(std::move(r));
        }
        std::stringstream buf;
        write_jsonl(buf, issues);
        CHECK(read_jsonl(buf) == issues);
    }
}

TEST_CASE("session log and record store persist documents") {
    const fs::path dir = fs::temp_directory_path() / "ecograph_test_store";
    fs::remove_all(dir);
    SessionLog log(dir / "raw" / "session.jsonl");
    RawIssueDocument a{"A-1", "{\"key\":\"A-1\", \"odd\":\"\\u00e9\\n\"}", parse_timestamp_or_throw("2015-01-01T00:00:00Z"),
                       {{"10", "diff --git a b\n"}}};
    RawIssueDocument b{"A-2", "{\"key\":\"A-2\"}\r\n", parse_timestamp_or_throw("2015-01-01T00:00:01Z"), {}};
    log.append(a);
    log.append(b);
    const auto loaded = log.load();
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0] == a);
    CHECK(loaded[1] == b);

    RecordStore store(dir / "records");
    IssueRecord r;
    r.key = "HADOOP/1 2";
    r.reporter_email = "x@y.z";
    store.put(r);
    r.issue_type = IssueType::bug;
    store.put(r);
    CHECK(store.get("HADOOP/1 2") == r);
    CHECK_FALSE(store.get("missing"));
    CHECK(store.all().size() == 1);
    fs::remove_all(dir);
}
