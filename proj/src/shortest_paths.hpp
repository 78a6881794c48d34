#pragma once

#include "ecograph/graph.hpp"

#include <cstddef>
#include <vector>

namespace ecograph::detail {

bool nearly_equal(double a, double b) noexcept;

/// Single-source Dijkstra over distance = 1/weight with shortest-path counts.
struct ShortestPathTree {
    std::vector<double> dist;                     // +inf when unreachable
    std::vector<double> sigma;                    // number of shortest paths
    std::vector<std::vector<std::size_t>> preds;  // predecessors on shortest paths
    std::vector<std::size_t> order;               // settled vertices, nondecreasing dist

    explicit ShortestPathTree(std::size_t n);
    void reset();
};

void shortest_paths(const CollaborationNetwork& net, std::size_t source, ShortestPathTree& tree);

/// Brandes dependency of `source` on every vertex (0 at the source itself).
void source_dependencies(const CollaborationNetwork& net, std::size_t source, ShortestPathTree& tree,
                         std::vector<double>& delta);

/// Closeness for one vertex from its shortest-path tree.
double closeness_from(const ShortestPathTree& tree, std::size_t vertex_count);

/// Neighbor lists of the undirected projection, sorted and duplicate-free.
std::vector<std::vector<std::size_t>> undirected_projection(const CollaborationNetwork& net);

double local_clustering(const std::vector<std::vector<std::size_t>>& adj, std::size_t v);

} // namespace ecograph::detail
