#pragma once

#include "ecograph/graph.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ecograph {

/// Values indexed like CollaborationNetwork::vertices().
using VertexValues = std::vector<double>;

/// Relative tolerance under which two path lengths count as tied.
inline constexpr double kPathTieTolerance = 1e-12;

struct CentralityRow {
    double out_degree = 0.0;
    double betweenness = 0.0;
    double closeness = 0.0;

    friend bool operator==(const CentralityRow&, const CentralityRow&) = default;
};

/// Per-stakeholder centralities, keyed by stakeholder id.
using CentralityTable = std::map<std::string, CentralityRow>;

struct GraphStats {
    double average_clustering_coefficient = 0.0;
    double graph_density = 0.0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;

    friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

/// Node strength: sum of outgoing edge weights.
VertexValues out_degree_centrality(const CollaborationNetwork& net);

/// Weighted directed betweenness over distance = 1/weight, endpoints
/// excluded, unnormalized. Tied shortest paths are all counted.
VertexValues betweenness_centrality(const CollaborationNetwork& net);

/// Component-adjusted closeness over distance = 1/weight:
///   (r / (n-1)) * (r / sum of distances to the r reachable vertices),
/// 0 when nothing is reachable.
VertexValues closeness_centrality(const CollaborationNetwork& net);

/// Mean local clustering over all vertices of the undirected, unweighted
/// projection; vertices of degree < 2 contribute 0.
double average_clustering_coefficient(const CollaborationNetwork& net);

/// m / (n (n-1)); 0 when n < 2.
double graph_density(std::size_t vertex_count, std::size_t edge_count) noexcept;
double graph_density(const CollaborationNetwork& net) noexcept;

CentralityTable compute_centralities(const CollaborationNetwork& net);
GraphStats compute_graph_stats(const CollaborationNetwork& net);

/// Re-keys vertex-indexed values by stakeholder id.
std::map<std::string, double> by_stakeholder(const CollaborationNetwork& net, const VertexValues& values);

namespace serial {

// Single-threaded reference kernels. Results are bit-identical to the
// OpenMP versions above.
VertexValues betweenness_centrality(const CollaborationNetwork& net);
VertexValues closeness_centrality(const CollaborationNetwork& net);
double average_clustering_coefficient(const CollaborationNetwork& net);

} // namespace serial

} // namespace ecograph
