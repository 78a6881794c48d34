#include "ecograph/metrics.hpp"
#include "shortest_paths.hpp"

namespace ecograph::serial {

VertexValues betweenness_centrality(const CollaborationNetwork& net) {
    const std::size_t n = net.vertex_count();
    VertexValues bc(n, 0.0);
    detail::ShortestPathTree tree(n);
    std::vector<double> delta;
    for (std::size_t s = 0; s < n; ++s) {
        detail::source_dependencies(net, s, tree, delta);
        for (std::size_t w = 0; w < n; ++w) bc[w] += delta[w];
    }
    return bc;
}

VertexValues closeness_centrality(const CollaborationNetwork& net) {
    const std::size_t n = net.vertex_count();
    VertexValues out(n, 0.0);
    detail::ShortestPathTree tree(n);
    for (std::size_t v = 0; v < n; ++v) {
        detail::shortest_paths(net, v, tree);
        out[v] = detail::closeness_from(tree, n);
    }
    return out;
}

double average_clustering_coefficient(const CollaborationNetwork& net) {
    const std::size_t n = net.vertex_count();
    if (n == 0) return 0.0;
    const auto adj = detail::undirected_projection(net);
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) sum += detail::local_clustering(adj, v);
    return sum / static_cast<double>(n);
}

} // namespace ecograph::serial
