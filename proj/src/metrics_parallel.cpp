#include "ecograph/metrics.hpp"
#include "shortest_paths.hpp"

#include <algorithm>

namespace ecograph {
namespace {

// Sources per reduction block; bounds the dependency buffer to kBlock * n.
constexpr std::size_t kBlock = 128;

} // namespace

VertexValues betweenness_centrality(const CollaborationNetwork& net) {
    const std::size_t n = net.vertex_count();
    VertexValues bc(n, 0.0);
    std::vector<std::vector<double>> rows(std::min(n, kBlock));

    for (std::size_t block = 0; block < n; block += kBlock) {
        const auto count = static_cast<std::ptrdiff_t>(std::min(kBlock, n - block));
#pragma omp parallel
        {
            detail::ShortestPathTree tree(n);
#pragma omp for schedule(dynamic, 1)
            for (std::ptrdiff_t i = 0; i < count; ++i) {
                const auto k = static_cast<std::size_t>(i);
                detail::source_dependencies(net, block + k, tree, rows[k]);
            }
        }
        // Sources are added in index order, exactly as the serial kernel does.
        for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k)
            for (std::size_t w = 0; w < n; ++w) bc[w] += rows[k][w];
    }
    return bc;
}

VertexValues closeness_centrality(const CollaborationNetwork& net) {
    const std::size_t n = net.vertex_count();
    VertexValues out(n, 0.0);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
    {
        detail::ShortestPathTree tree(n);
#pragma omp for schedule(dynamic, 4)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::size_t>(i);
            detail::shortest_paths(net, v, tree);
            out[v] = detail::closeness_from(tree, n);
        }
    }
    return out;
}

double average_clustering_coefficient(const CollaborationNetwork& net) {
    const std::size_t n = net.vertex_count();
    if (n == 0) return 0.0;
    const auto adj = detail::undirected_projection(net);
    std::vector<double> local(n, 0.0);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; ++i)
        local[static_cast<std::size_t>(i)] = detail::local_clustering(adj, static_cast<std::size_t>(i));
    double sum = 0.0;
    for (double c : local) sum += c;
    return sum / static_cast<double>(n);
}

} // namespace ecograph
