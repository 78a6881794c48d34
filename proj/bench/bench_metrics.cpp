// Serial reference kernels vs. their OpenMP counterparts on random sparse
// stakeholder networks.

#include "ecograph/graph.hpp"
#include "ecograph/metrics.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

namespace {

using namespace ecograph;

CollaborationNetwork random_network(std::size_t n, double mean_out_degree, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> weight(0.05, 3.0);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("org" + std::to_string(100000 + i));
    EdgeWeights edges;
    const auto m = static_cast<std::size_t>(mean_out_degree * static_cast<double>(n));
    while (edges.size() < m) {
        const auto a = pick(rng);
        const auto b = pick(rng);
        if (a != b) edges[{ids[a], ids[b]}] = weight(rng);
    }
    return CollaborationNetwork("bench", ids, edges);
}

void BM_BetweennessSerial(benchmark::State& state) {
    const auto net = random_network(static_cast<std::size_t>(state.range(0)), 4.0, 7);
    for (auto _ : state) benchmark::DoNotOptimize(serial::betweenness_centrality(net));
}

void BM_BetweennessParallel(benchmark::State& state) {
    const auto net = random_network(static_cast<std::size_t>(state.range(0)), 4.0, 7);
    for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(net));
}

void BM_ClosenessSerial(benchmark::State& state) {
    const auto net = random_network(static_cast<std::size_t>(state.range(0)), 4.0, 11);
    for (auto _ : state) benchmark::DoNotOptimize(serial::closeness_centrality(net));
}

void BM_ClosenessParallel(benchmark::State& state) {
    const auto net = random_network(static_cast<std::size_t>(state.range(0)), 4.0, 11);
    for (auto _ : state) benchmark::DoNotOptimize(closeness_centrality(net));
}

void BM_ClusteringSerial(benchmark::State& state) {
    const auto net = random_network(static_cast<std::size_t>(state.range(0)), 8.0, 13);
    for (auto _ : state) benchmark::DoNotOptimize(serial::average_clustering_coefficient(net));
}

void BM_ClusteringParallel(benchmark::State& state) {
    const auto net = random_network(static_cast<std::size_t>(state.range(0)), 8.0, 13);
    for (auto _ : state) benchmark::DoNotOptimize(average_clustering_coefficient(net));
}

std::vector<IssueRecord> random_issues(std::size_t count, std::size_t orgs, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> org(0, orgs - 1);
    std::uniform_int_distribution<int> contributors(1, 5);
    std::uniform_int_distribution<std::int64_t> loc(0, 400);
    std::vector<IssueRecord> issues(count);
    for (std::size_t i = 0; i < count; ++i) {
        issues[i].key = "BENCH-" + std::to_string(i);
        const int k = contributors(rng);
        for (int c = 0; c < k; ++c) {
            Patch p;
            p.author_email = "dev@org" + std::to_string(org(rng)) + ".example";
            p.added_loc = loc(rng);
            p.deleted_loc = loc(rng) / 3;
            issues[i].patches.push_back(std::move(p));
        }
    }
    return issues;
}

AffiliationMap bench_map(std::size_t orgs) {
    AffiliationMap map;
    for (std::size_t i = 0; i < orgs; ++i)
        map.add_domain_rule("org" + std::to_string(i) + ".example", "org" + std::to_string(i));
    return map;
}

void BM_BuildNetworkSerial(benchmark::State& state) {
    const auto issues = random_issues(static_cast<std::size_t>(state.range(0)), 60, 3);
    const auto map = bench_map(60);
    for (auto _ : state) benchmark::DoNotOptimize(serial::build_network(issues, map, "R0.0"));
}

void BM_BuildNetworkParallel(benchmark::State& state) {
    const auto issues = random_issues(static_cast<std::size_t>(state.range(0)), 60, 3);
    const auto map = bench_map(60);
    for (auto _ : state) benchmark::DoNotOptimize(build_network(issues, map, "R0.0"));
}

} // namespace

BENCHMARK(BM_BetweennessSerial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_BetweennessParallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_ClosenessSerial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_ClosenessParallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_ClusteringSerial)->Arg(256)->Arg(2048);
BENCHMARK(BM_ClusteringParallel)->Arg(256)->Arg(2048);
BENCHMARK(BM_BuildNetworkSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_BuildNetworkParallel)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
