#include "ecograph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ecograph {

double IssueContribution::total() const noexcept {
    double sum = 0.0;
    for (const auto& [id, x] : shares) sum += x;
    return sum;
}

CollaborationNetwork::CollaborationNetwork(std::string release_id, std::vector<std::string> vertices,
                                           const EdgeWeights& edges)
    : release_id_(std::move(release_id)), vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw std::invalid_argument("duplicate vertex in network " + release_id_);

    edges_.reserve(edges.size());
    for (const auto& [pair, w] : edges) {
        auto s = index_of(pair.first);
        auto t = index_of(pair.second);
        if (!s || !t) throw std::invalid_argument("edge endpoint not a vertex: " + pair.first + "->" + pair.second);
        if (*s == *t) throw std::invalid_argument("self-loop on " + pair.first);
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("non-positive weight on " + pair.first + "->" + pair.second);
        edges_.push_back({*s, *t, w});
    }
    // Map order over id strings equals index order because vertices are sorted.
    offsets_.assign(vertices_.size() + 1, 0);
    for (const Edge& e : edges_) ++offsets_[e.source + 1];
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

std::optional<std::size_t> CollaborationNetwork::index_of(std::string_view id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

double CollaborationNetwork::weight(std::string_view source, std::string_view target) const {
    auto s = index_of(source);
    auto t = index_of(target);
    if (!s || !t) return 0.0;
    for (const Edge& e : out_edges(*s))
        if (e.target == *t) return e.weight;
    return 0.0;
}

EdgeWeights CollaborationNetwork::edge_map() const {
    EdgeWeights out;
    for (const Edge& e : edges_) out[{vertices_[e.source], vertices_[e.target]}] = e.weight;
    return out;
}

std::span<const Edge> CollaborationNetwork::out_edges(std::size_t v) const {
    if (offsets_.empty()) return {};
    return std::span<const Edge>(edges_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::vector<std::string> patch_contributors(const IssueRecord& issue, const AffiliationMap& map,
                                            const NetworkOptions& options) {
    std::set<std::string> ids;
    for (const Patch& p : issue.patches) {
        if (options.committed_only && !p.approved) continue;
        ids.insert(stakeholder_id_for(p.author_email, map));
    }
    return {ids.begin(), ids.end()};
}

IssueContribution issue_shares(const IssueRecord& issue, const AffiliationMap& map,
                               const NetworkOptions& options) {
    std::map<std::string, std::int64_t> net;
    for (const Patch& p : issue.patches) {
        if (options.committed_only && !p.approved) continue;
        net[stakeholder_id_for(p.author_email, map)] += std::max<std::int64_t>(p.net_loc(), 0);
    }
    if (net.empty()) throw std::invalid_argument("issue " + issue.key + " has no counted patches");

    IssueContribution c{issue.key, {}};
    for (const auto& [id, x] : net)
        if (x > 0) c.shares.emplace(id, static_cast<double>(x));
    if (c.shares.empty())
        for (const auto& [id, x] : net) c.shares.emplace(id, 1.0);
    return c;
}

EdgeWeights issue_edge_weights(const IssueContribution& contribution) {
    EdgeWeights out;
    if (contribution.shares.size() < 2) return out;
    const double total = contribution.total();
    for (const auto& [source, x] : contribution.shares) {
        const double w = x / total;
        for (const auto& [target, unused] : contribution.shares)
            if (source != target) out.emplace(StakeholderPair{source, target}, w);
    }
    return out;
}

namespace {

struct IssueOutcome {
    std::vector<std::string> contributors;
    EdgeWeights weights;
};

IssueOutcome evaluate(const IssueRecord& issue, const AffiliationMap& map, const NetworkOptions& options) {
    IssueOutcome out;
    out.contributors = patch_contributors(issue, map, options);
    if (!out.contributors.empty()) out.weights = issue_edge_weights(issue_shares(issue, map, options));
    return out;
}

std::vector<const IssueRecord*> sorted_by_key(const std::vector<IssueRecord>& issues) {
    std::vector<const IssueRecord*> order;
    order.reserve(issues.size());
    for (const auto& issue : issues) order.push_back(&issue);
    std::stable_sort(order.begin(), order.end(),
                     [](const IssueRecord* a, const IssueRecord* b) { return a->key < b->key; });
    return order;
}

CollaborationNetwork reduce(const std::vector<IssueOutcome>& outcomes, const std::string& release_id) {
    std::set<std::string> vertices;
    EdgeWeights edges;
    for (const auto& o : outcomes) {
        vertices.insert(o.contributors.begin(), o.contributors.end());
        for (const auto& [pair, w] : o.weights) edges[pair] += w;
    }
    return CollaborationNetwork(release_id, {vertices.begin(), vertices.end()}, edges);
}

} // namespace

CollaborationNetwork build_network(const std::vector<IssueRecord>& issues, const AffiliationMap& map,
                                   const std::string& release_id, const NetworkOptions& options) {
    const auto order = sorted_by_key(issues);
    const auto n = static_cast<std::ptrdiff_t>(order.size());
    std::vector<IssueOutcome> outcomes(order.size());
    std::vector<std::exception_ptr> failures(order.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            outcomes[k] = evaluate(*order[k], map, options);
        } catch (...) {
            failures[k] = std::current_exception();
        }
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    return reduce(outcomes, release_id);
}

namespace serial {

CollaborationNetwork build_network(const std::vector<IssueRecord>& issues, const AffiliationMap& map,
                                   const std::string& release_id, const NetworkOptions& options) {
    std::vector<IssueOutcome> outcomes;
    for (const IssueRecord* issue : sorted_by_key(issues)) outcomes.push_back(evaluate(*issue, map, options));
    return reduce(outcomes, release_id);
}

} // namespace serial
} // namespace ecograph
