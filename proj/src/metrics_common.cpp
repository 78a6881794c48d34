#include "ecograph/metrics.hpp"
#include "shortest_paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace ecograph {
namespace detail {

bool nearly_equal(double a, double b) noexcept {
    return std::abs(a - b) <= kPathTieTolerance * std::max(std::abs(a), std::abs(b));
}

ShortestPathTree::ShortestPathTree(std::size_t n) : dist(n), sigma(n), preds(n) {
    order.reserve(n);
    reset();
}

void ShortestPathTree::reset() {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::fill(sigma.begin(), sigma.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();
}

void shortest_paths(const CollaborationNetwork& net, std::size_t source, ShortestPathTree& tree) {
    using Item = std::pair<double, std::size_t>;
    tree.reset();
    std::vector<char> settled(net.vertex_count(), 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    tree.dist[source] = 0.0;
    tree.sigma[source] = 1.0;
    queue.emplace(0.0, source);

    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        tree.order.push_back(v);
        for (const Edge& e : net.out_edges(v)) {
            const std::size_t w = e.target;
            if (settled[w]) continue;
            const double alt = d + 1.0 / e.weight;
            if (std::isinf(tree.dist[w]) || (alt < tree.dist[w] && !nearly_equal(alt, tree.dist[w]))) {
                tree.dist[w] = alt;
                tree.sigma[w] = tree.sigma[v];
                tree.preds[w].assign(1, v);
                queue.emplace(alt, w);
            } else if (nearly_equal(alt, tree.dist[w])) {
                tree.sigma[w] += tree.sigma[v];
                tree.preds[w].push_back(v);
            }
        }
    }
}

void source_dependencies(const CollaborationNetwork& net, std::size_t source, ShortestPathTree& tree,
                         std::vector<double>& delta) {
    shortest_paths(net, source, tree);
    delta.assign(net.vertex_count(), 0.0);
    for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
        const std::size_t w = *it;
        const double coeff = (1.0 + delta[w]) / tree.sigma[w];
        for (const std::size_t v : tree.preds[w]) delta[v] += tree.sigma[v] * coeff;
    }
    delta[source] = 0.0;
}

double closeness_from(const ShortestPathTree& tree, std::size_t vertex_count) {
    if (vertex_count < 2) return 0.0;
    double reach = 0.0;
    double total = 0.0;
    for (const std::size_t u : tree.order) {
        if (tree.dist[u] == 0.0) continue;
        reach += 1.0;
        total += tree.dist[u];
    }
    if (reach == 0.0) return 0.0;
    return (reach / static_cast<double>(vertex_count - 1)) * (reach / total);
}

std::vector<std::vector<std::size_t>> undirected_projection(const CollaborationNetwork& net) {
    std::vector<std::vector<std::size_t>> adj(net.vertex_count());
    for (const Edge& e : net.edges()) {
        adj[e.source].push_back(e.target);
        adj[e.target].push_back(e.source);
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

double local_clustering(const std::vector<std::vector<std::size_t>>& adj, std::size_t v) {
    const auto& nbrs = adj[v];
    const std::size_t deg = nbrs.size();
    if (deg < 2) return 0.0;
    std::size_t links = 0;
    for (std::size_t i = 0; i < deg; ++i) {
        const auto& ni = adj[nbrs[i]];
        for (std::size_t j = i + 1; j < deg; ++j)
            if (std::binary_search(ni.begin(), ni.end(), nbrs[j])) ++links;
    }
    return 2.0 * static_cast<double>(links) / (static_cast<double>(deg) * static_cast<double>(deg - 1));
}

} // namespace detail

VertexValues out_degree_centrality(const CollaborationNetwork& net) {
    VertexValues out(net.vertex_count(), 0.0);
    for (const Edge& e : net.edges()) out[e.source] += e.weight;
    return out;
}

double graph_density(std::size_t vertex_count, std::size_t edge_count) noexcept {
    if (vertex_count < 2) return 0.0;
    const double n = static_cast<double>(vertex_count);
    return static_cast<double>(edge_count) / (n * (n - 1.0));
}

double graph_density(const CollaborationNetwork& net) noexcept {
    return graph_density(net.vertex_count(), net.edge_count());
}

CentralityTable compute_centralities(const CollaborationNetwork& net) {
    const auto out_degree = out_degree_centrality(net);
    const auto betweenness = betweenness_centrality(net);
    const auto closeness = closeness_centrality(net);
    CentralityTable table;
    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        table.emplace(net.vertices()[v], CentralityRow{out_degree[v], betweenness[v], closeness[v]});
    return table;
}

GraphStats compute_graph_stats(const CollaborationNetwork& net) {
    return GraphStats{average_clustering_coefficient(net), graph_density(net), net.vertex_count(),
                      net.edge_count()};
}

std::map<std::string, double> by_stakeholder(const CollaborationNetwork& net, const VertexValues& values) {
    std::map<std::string, double> out;
    for (std::size_t v = 0; v < net.vertex_count() && v < values.size(); ++v)
        out.emplace(net.vertices()[v], values[v]);
    return out;
}

} // namespace ecograph
