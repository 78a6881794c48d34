#include "builders.hpp"

#include "ecograph/error.hpp"
#include "ecograph/identity.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ecograph;

namespace {

AffiliationMap hadoop_map() {
    AffiliationMap map;
    map.add_domain_rule("hortonworks.com", "hortonworks");
    map.add_domain_rule("yahoo-inc.com", "yahoo");
    map.add_override("bob@apache.org", "yahoo");
    map.set_category("hortonworks", UserCategory::product_provider);
    return map;
}

std::string id_of(const Resolution& r) {
    REQUIRE(std::holds_alternative<Stakeholder>(r));
    return std::get<Stakeholder>(r).id;
}

} // namespace

TEST_CASE("resolve: domain rule") {
    const auto r = resolve("alice@hortonworks.com", hadoop_map());
    CHECK(id_of(r) == "hortonworks");
    CHECK(std::get<Stakeholder>(r).user_category == UserCategory::product_provider);
}

TEST_CASE("resolve: override for a shared project domain") {
    CHECK(id_of(resolve("bob@apache.org", hadoop_map())) == "yahoo");
    CHECK(std::get<Stakeholder>(resolve("bob@apache.org", hadoop_map())).user_category == UserCategory::unknown);
}

TEST_CASE("resolve: no rule yields Unresolved with the email") {
    const auto r = resolve("carol@gmail.com", hadoop_map());
    REQUIRE(std::holds_alternative<Unresolved>(r));
    CHECK(std::get<Unresolved>(r).email == "carol@gmail.com");
    CHECK(stakeholder_id_for("carol@gmail.com", hadoop_map()) == kUnaffiliated);
}

TEST_CASE("resolve: case-insensitive, exact domain only") {
    const auto map = hadoop_map();
    CHECK(id_of(resolve("Alice@HortonWorks.COM", map)) == "hortonworks");
    CHECK(id_of(resolve("BOB@Apache.org", map)) == "yahoo");
    CHECK(std::holds_alternative<Unresolved>(resolve("x@eng.hortonworks.com", map)));
    CHECK(std::holds_alternative<Unresolved>(resolve("x@hortonworks.com.evil", map)));
}

TEST_CASE("resolve: malformed emails are rejected") {
    const auto map = hadoop_map();
    for (const char* bad : {"", "no-at-sign", "two@@example.com", "a@b@c", "@example.com", "user@"})
        CHECK_THROWS_AS(resolve(bad, map), std::invalid_argument);
}

TEST_CASE("overrides take precedence over domain rules") {
    AffiliationMap map;
    map.add_override("dev@hortonworks.com", "yahoo");
    map.add_domain_rule("hortonworks.com", "hortonworks");
    CHECK(id_of(resolve("dev@hortonworks.com", map)) == "yahoo");
    CHECK(id_of(resolve("other@hortonworks.com", map)) == "hortonworks");
}

TEST_CASE("adding domain rules never changes override matches") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> domains{"a.org", "b.org", "c.org", "apache.org"};
    for (int round = 0; round < 50; ++round) {
        AffiliationMap map;
        std::vector<std::string> emails;
        for (int i = 0; i < 6; ++i) {
            const std::string email = "u" + std::to_string(i) + "@" + domains[rng() % domains.size()];
            emails.push_back(email);
            if (rng() % 2) map.add_override(email, "org" + std::to_string(rng() % 3));
        }
        std::vector<Resolution> before;
        for (const auto& e : emails) before.push_back(resolve(e, map));
        for (const auto& d : domains) map.add_domain_rule(d, "org" + std::to_string(rng() % 5));
        for (std::size_t i = 0; i < emails.size(); ++i)
            if (map.override_for(emails[i])) CHECK(resolve(emails[i], map) == before[i]);
    }
}

TEST_CASE("stakeholder ids are normalized slugs") {
    CHECK(normalize_stakeholder_id("Hortonworks") == "hortonworks");
    CHECK_THROWS_AS(normalize_stakeholder_id(""), ConfigError);
    AffiliationMap map;
    map.add_domain_rule("Cloudera.COM", "Cloudera");
    CHECK(id_of(resolve("x@cloudera.com", map)) == "cloudera");
    CHECK(map.stakeholder_ids() == std::vector<std::string>{"cloudera"});
}

TEST_CASE("AffiliationMap::from_json") {
    const auto map = AffiliationMap::from_json(nlohmann::json::parse(R"({
        "domains": {"intel.com": "intel"},
        "overrides": {"tucu@apache.org": "cloudera"},
        "categories": {"intel": "product_supporter", "cloudera": "product_provider"}
    })"));
    CHECK(id_of(resolve("a@intel.com", map)) == "intel");
    CHECK(map.category_of("cloudera") == UserCategory::product_provider);
    CHECK(map.category_of("nobody") == UserCategory::unknown);
    CHECK(map.stakeholder_ids() == std::vector<std::string>{"cloudera", "intel"});

    CHECK_THROWS_AS(AffiliationMap::from_json(nlohmann::json::parse(R"({"domainz": {}})")), ConfigError);
    CHECK_THROWS_AS(AffiliationMap::from_json(nlohmann::json::parse(R"({"categories": {"x": "startup"}})")),
                    ConfigError);
    CHECK_THROWS_AS(AffiliationMap::from_json(nlohmann::json::parse(R"({"domains": {"a.org": 3}})")), ConfigError);
}

TEST_CASE("AffiliationMap::load reads the fixture") {
    const auto map = AffiliationMap::load(std::string(ECOGRAPH_FIXTURE_DIR) + "/synthetic/affiliations.json");
    CHECK(id_of(resolve("acm@apache.org", map)) == "hortonworks");
    CHECK(map.category_of("yahoo") == UserCategory::platform_user);
    CHECK_THROWS_AS(AffiliationMap::load("/nonexistent/affiliations.json"), ConfigError);
}

TEST_CASE("unresolved_report") {
    using build::issue;
    using build::patch;
    AffiliationMap all;
    all.add_domain_rule("example.org", "example");

    SUBCASE("everything resolves") {
        const std::vector<IssueRecord> corpus{issue("X-1", {patch("a@example.org", 1, 0)})};
        CHECK(unresolved_report(corpus, all).empty());
    }
    SUBCASE("counts and ordering") {
        const std::vector<IssueRecord> corpus{
            issue("X-1", {patch("x@gmail.com", 1, 0), patch("x@gmail.com", 2, 0)}),
            issue("X-2", {patch("x@gmail.com", 1, 0), patch("y@gmail.com", 1, 0)}),
        };
        const std::vector<UnresolvedEntry> expected{{"x@gmail.com", 3}, {"y@gmail.com", 1}};
        CHECK(unresolved_report(corpus, all) == expected);
    }
    SUBCASE("ties break by email") {
        const std::vector<IssueRecord> corpus{
            issue("X-1", {patch("zed@gmail.com", 1, 0), patch("amy@gmail.com", 1, 0)}),
            issue("X-2", {patch("zed@gmail.com", 1, 0), patch("amy@gmail.com", 1, 0)}),
        };
        const std::vector<UnresolvedEntry> expected{{"amy@gmail.com", 2}, {"zed@gmail.com", 2}};
        CHECK(unresolved_report(corpus, all) == expected);
    }
    SUBCASE("reporters count too") {
        auto rec = issue("X-1", {patch("a@example.org", 1, 0)});
        rec.reporter_email = "reporter@gmail.com";
        const std::vector<UnresolvedEntry> expected{{"reporter@gmail.com", 1}};
        CHECK(unresolved_report({rec}, all) == expected);
    }
}

TEST_CASE("resolved + unresolved partition the distinct contributor emails") {
    std::mt19937_64 rng(99);
    const std::vector<std::string> domains{"a.org", "b.org", "gmail.com", "apache.org"};
    AffiliationMap map;
    map.add_domain_rule("a.org", "a");
    map.add_domain_rule("b.org", "b");
    map.add_override("u1@apache.org", "a");
    for (int round = 0; round < 30; ++round) {
        std::vector<IssueRecord> corpus;
        std::set<std::string> distinct;
        for (int i = 0; i < 8; ++i) {
            std::vector<Patch> patches;
            for (int j = 0; j < 3; ++j) {
                const std::string email =
                    "u" + std::to_string(rng() % 4) + "@" + domains[rng() % domains.size()];
                distinct.insert(email);
                patches.push_back(build::patch(email, 1, 0));
            }
            auto rec = build::issue("R-" + std::to_string(i), patches);
            rec.reporter_email = patches.front().author_email;
            corpus.push_back(rec);
        }
        std::size_t resolved = 0;
        for (const auto& e : distinct)
            if (std::holds_alternative<Stakeholder>(resolve(e, map))) ++resolved;
        CHECK(resolved + unresolved_report(corpus, map).size() == distinct.size());
    }
}
