#include "builders.hpp"

#include "ecograph/graph.hpp"

#include <doctest.h>

#include <random>

using namespace ecograph;
using build::issue;
using build::patch;

namespace {

// a.org -> a, b.org -> b, ...
AffiliationMap letter_map() {
    AffiliationMap map;
    for (char c = 'a'; c <= 'h'; ++c) map.add_domain_rule(std::string(1, c) + ".org", std::string(1, c));
    return map;
}

std::string email(char org, int person = 0) {
    return "dev" + std::to_string(person) + "@" + std::string(1, org) + ".org";
}

IssueRecord three_way_issue() {
    return issue("HADOOP-1", {patch(email('a'), 100, 50), patch(email('b'), 100, 0), patch(email('c'), 150, 0)});
}

std::vector<IssueRecord> random_corpus(std::mt19937_64& rng, int issues) {
    std::vector<IssueRecord> corpus;
    for (int i = 0; i < issues; ++i) {
        std::vector<Patch> patches;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int j = 0; j < n; ++j) {
            const char org = static_cast<char>('a' + rng() % 8);
            const auto added = static_cast<std::int64_t>(rng() % 200);
            const auto deleted = static_cast<std::int64_t>(rng() % 120);
            patches.push_back(patch(email(org, static_cast<int>(rng() % 3)), added, deleted,
                                    "2015-01-10T00:00:00Z", rng() % 4 != 0));
        }
        corpus.push_back(issue("R-" + std::to_string(i), patches));
    }
    return corpus;
}

double weight_sum(const EdgeWeights& w) {
    double s = 0.0;
    for (const auto& [pair, value] : w) s += value;
    return s;
}

} // namespace

TEST_CASE("issue_shares: net LOC per stakeholder") {
    const auto map = letter_map();
    const auto c = issue_shares(three_way_issue(), map);
    CHECK(c.issue_key == "HADOOP-1");
    CHECK(c.shares == std::map<std::string, double>{{"a", 50}, {"b", 100}, {"c", 150}});
    CHECK(c.total() == 300);

    CHECK(issue_shares(issue("X-1", {patch(email('a'), 10, 2)}), map).shares ==
          std::map<std::string, double>{{"a", 8}});
}

TEST_CASE("issue_shares: patches of the same organization accumulate, negatives floor at zero") {
    const auto map = letter_map();
    const auto c = issue_shares(
        issue("X-1", {patch(email('a', 0), 10, 0), patch(email('a', 1), 5, 0), patch(email('a', 2), 0, 30),
                      patch(email('b'), 3, 9)}),
        map);
    CHECK(c.shares == std::map<std::string, double>{{"a", 15}});
}

TEST_CASE("issue_shares: all non-positive nets fall back to counting") {
    const auto map = letter_map();
    const auto c = issue_shares(issue("X-1", {patch(email('a'), 5, 9), patch(email('b'), 3, 3)}), map);
    CHECK(c.shares == std::map<std::string, double>{{"a", 1}, {"b", 1}});
}

TEST_CASE("issue_shares: unresolved authors go to the synthetic stakeholder") {
    const auto c = issue_shares(issue("X-1", {patch(email('a'), 1, 0), patch("who@gmail.com", 2, 0)}), letter_map());
    CHECK(c.shares.at(std::string(kUnaffiliated)) == 2);
}

TEST_CASE("issue_shares: committed_only ignores unapproved patches") {
    const auto map = letter_map();
    const auto rec = issue("X-1", {patch(email('a'), 10, 0), patch(email('b'), 10, 0, "2015-01-10T00:00:00Z", false)});
    CHECK(issue_shares(rec, map).shares.size() == 2);
    CHECK(issue_shares(rec, map, {.committed_only = true}).shares == std::map<std::string, double>{{"a", 10}});
    CHECK(patch_contributors(rec, map, {.committed_only = true}) == std::vector<std::string>{"a"});

    const auto none = issue("X-2", {patch(email('a'), 1, 0, "2015-01-10T00:00:00Z", false)});
    CHECK_THROWS_AS(issue_shares(none, map, {.committed_only = true}), std::invalid_argument);
    CHECK_THROWS_AS(issue_shares(issue("X-3", {}), map), std::invalid_argument);
}

TEST_CASE("issue_edge_weights: three-contributor example") {
    const auto w = issue_edge_weights({"HADOOP-1", {{"A", 50}, {"B", 100}, {"C", 150}}});
    REQUIRE(w.size() == 6);
    CHECK(w.at({"A", "B"}) == doctest::Approx(50.0 / 300).epsilon(1e-15));
    CHECK(w.at({"A", "C"}) == doctest::Approx(50.0 / 300).epsilon(1e-15));
    CHECK(w.at({"B", "A"}) == doctest::Approx(100.0 / 300).epsilon(1e-15));
    CHECK(w.at({"B", "C"}) == doctest::Approx(100.0 / 300).epsilon(1e-15));
    CHECK(w.at({"C", "A"}) == doctest::Approx(150.0 / 300).epsilon(1e-15));
    CHECK(w.at({"C", "B"}) == doctest::Approx(150.0 / 300).epsilon(1e-15));
}

TEST_CASE("issue_edge_weights: trivial cases") {
    CHECK(issue_edge_weights({"X", {{"A", 8}}}).empty());
    const auto w = issue_edge_weights({"X", {{"A", 1}, {"B", 1}}});
    CHECK(w == EdgeWeights{{{"A", "B"}, 0.5}, {{"B", "A"}, 0.5}});
}

TEST_CASE("issue_edge_weights: ordered-pair weights sum to k - 1") {
    std::mt19937_64 rng(2015);
    for (int round = 0; round < 1000; ++round) {
        IssueContribution c{"X", {}};
        const std::size_t k = 1 + rng() % 12;
        for (std::size_t i = 0; i < k; ++i)
            c.shares["s" + std::to_string(i)] = std::uniform_real_distribution<double>(1e-3, 1e4)(rng);
        CHECK(weight_sum(issue_edge_weights(c)) == doctest::Approx(static_cast<double>(k - 1)).epsilon(1e-9));
    }
}

TEST_CASE("scaling LOC leaves edge weights unchanged") {
    std::mt19937_64 rng(7);
    const auto map = letter_map();
    for (auto rec : random_corpus(rng, 200)) {
        const auto base = issue_edge_weights(issue_shares(rec, map));
        const std::int64_t factor = 1 + static_cast<std::int64_t>(rng() % 9);
        for (auto& p : rec.patches) {
            p.added_loc *= factor;
            p.deleted_loc *= factor;
        }
        const auto scaled = issue_edge_weights(issue_shares(rec, map));
        REQUIRE(scaled.size() == base.size());
        for (const auto& [pair, w] : base) CHECK(scaled.at(pair) == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("build_network: accumulation") {
    const auto map = letter_map();
    const auto even = [](const std::string& key) {
        return issue(key, {patch(email('a'), 1, 0), patch(email('b'), 1, 0)});
    };
    const auto net = build_network({even("X-1"), even("X-2")}, map, "R2.7");
    CHECK(net.release_id() == "R2.7");
    CHECK(net.weight("a", "b") == 1.0);
    CHECK(net.weight("b", "a") == 1.0);
    CHECK(net.edge_count() == 2);
}

TEST_CASE("build_network: single three-contributor issue") {
    const auto map = letter_map();
    const auto net = build_network({three_way_issue()}, map, "R");
    CHECK(net.vertices() == std::vector<std::string>{"a", "b", "c"});
    CHECK(net.edge_count() == 6);
    const auto expected = issue_edge_weights(issue_shares(three_way_issue(), map));
    CHECK(net.edge_map() == expected);
}

TEST_CASE("build_network: sole contributors stay as isolated vertices") {
    const auto map = letter_map();
    const auto net = build_network(
        {issue("X-1", {patch(email('a'), 3, 0), patch(email('b'), 4, 0)}), issue("X-2", {patch(email('c'), 9, 1)})},
        map, "R");
    CHECK(net.vertices() == std::vector<std::string>{"a", "b", "c"});
    CHECK(net.edge_count() == 2);
    CHECK(net.out_edges(*net.index_of("c")).empty());
    CHECK(net.weight("a", "c") == 0.0);
}

TEST_CASE("build_network: same-organization collaboration adds no self-loop") {
    const auto net = build_network({issue("X-1", {patch(email('a', 0), 3, 0), patch(email('a', 1), 4, 0)})},
                                   letter_map(), "R");
    CHECK(net.vertex_count() == 1);
    CHECK(net.edge_count() == 0);
}

TEST_CASE("build_network: empty input") {
    const auto net = build_network({}, letter_map(), "R");
    CHECK(net.vertex_count() == 0);
    CHECK(net.edge_count() == 0);
}

TEST_CASE("build_network: issues without counted patches are skipped") {
    const auto net = build_network({issue("X-1", {}), three_way_issue()}, letter_map(), "R");
    CHECK(net.vertex_count() == 3);
}

TEST_CASE("build_network is additive over concatenated issue lists") {
    std::mt19937_64 rng(42);
    const auto map = letter_map();
    for (int round = 0; round < 20; ++round) {
        const auto first = random_corpus(rng, 30);
        auto second = random_corpus(rng, 30);
        for (auto& r : second) r.key = "S" + r.key;
        auto all = first;
        all.insert(all.end(), second.begin(), second.end());

        const auto n1 = build_network(first, map, "R").edge_map();
        const auto n2 = build_network(second, map, "R").edge_map();
        const auto n = build_network(all, map, "R").edge_map();
        EdgeWeights sum = n1;
        for (const auto& [pair, w] : n2) sum[pair] += w;
        REQUIRE(n.size() == sum.size());
        for (const auto& [pair, w] : sum) CHECK(n.at(pair) == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("parallel build_network matches the serial reference exactly") {
    std::mt19937_64 rng(5);
    const auto map = letter_map();
    for (int round = 0; round < 10; ++round) {
        auto corpus = random_corpus(rng, 150);
        const auto parallel = build_network(corpus, map, "R");
        const auto serial = serial::build_network(corpus, map, "R");
        CHECK(parallel == serial);
        // input order does not matter
        std::shuffle(corpus.begin(), corpus.end(), rng);
        CHECK(build_network(corpus, map, "R") == parallel);
    }
}

TEST_CASE("CollaborationNetwork validates its invariants") {
    CHECK_THROWS_AS(CollaborationNetwork("R", {"a", "b"}, {{{"a", "a"}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(CollaborationNetwork("R", {"a", "b"}, {{{"a", "b"}, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(CollaborationNetwork("R", {"a", "b"}, {{{"a", "b"}, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(CollaborationNetwork("R", {"a"}, {{{"a", "z"}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(CollaborationNetwork("R", {"a", "a"}, {}), std::invalid_argument);

    const CollaborationNetwork net("R", {"c", "a", "b"}, {{{"c", "a"}, 2.0}, {{"a", "b"}, 0.5}, {{"a", "c"}, 1.0}});
    CHECK(net.vertices() == std::vector<std::string>{"a", "b", "c"});
    CHECK(net.index_of("b") == 1u);
    CHECK_FALSE(net.index_of("zz").has_value());
    const auto out = net.out_edges(0);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == Edge{0, 1, 0.5});
    CHECK(out[1] == Edge{0, 2, 1.0});
    CHECK(net.out_edges(1).empty());
    CHECK(net.weight("c", "a") == 2.0);
}
