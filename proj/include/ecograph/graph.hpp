#pragma once

#include "ecograph/identity.hpp"
#include "ecograph/records.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ecograph {

/// Per-issue contribution weights: stakeholder id -> positive net LOC share.
struct IssueContribution {
    std::string issue_key;
    std::map<std::string, double> shares;

    double total() const noexcept;
};

using StakeholderPair = std::pair<std::string, std::string>;
using EdgeWeights = std::map<StakeholderPair, double>;

struct Edge {
    std::size_t source = 0;
    std::size_t target = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed weighted stakeholder network for one release. Vertices are kept
/// sorted by id and edges sorted by (source, target); no self-loops, all
/// weights strictly positive.
class CollaborationNetwork {
public:
    CollaborationNetwork() = default;

    /// Validates the invariants; throws std::invalid_argument on violation.
    CollaborationNetwork(std::string release_id, std::vector<std::string> vertices,
                         const EdgeWeights& edges);

    const std::string& release_id() const noexcept { return release_id_; }
    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::optional<std::size_t> index_of(std::string_view id) const;
    /// 0 when the edge is absent.
    double weight(std::string_view source, std::string_view target) const;
    EdgeWeights edge_map() const;

    /// Outgoing edges of vertex `v` (a contiguous slice of edges()).
    std::span<const Edge> out_edges(std::size_t v) const;

    friend bool operator==(const CollaborationNetwork&, const CollaborationNetwork&) = default;

private:
    std::string release_id_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
};

struct NetworkOptions {
    /// Only patches with approved == true count.
    bool committed_only = false;
};

/// Stakeholders that submitted at least one counted patch on `issue`.
std::vector<std::string> patch_contributors(const IssueRecord& issue, const AffiliationMap& map,
                                            const NetworkOptions& options = {});

/// X per stakeholder = sum of max(net LOC, 0) over its patches; zero shares
/// are dropped, and if every share is zero each contributor gets 1.
/// Throws std::invalid_argument when the issue has no counted patch.
IssueContribution issue_shares(const IssueRecord& issue, const AffiliationMap& map,
                               const NetworkOptions& options = {});

/// W(a -> b) = X(a) / sum X for every ordered pair of distinct contributors.
EdgeWeights issue_edge_weights(const IssueContribution& contribution);

/// Accumulates issue_edge_weights over the release's issues. Issues are
/// reduced in key order, so the result does not depend on thread count.
CollaborationNetwork build_network(const std::vector<IssueRecord>& issues, const AffiliationMap& map,
                                   const std::string& release_id, const NetworkOptions& options = {});

namespace serial {

/// Single-threaded reference for build_network.
CollaborationNetwork build_network(const std::vector<IssueRecord>& issues, const AffiliationMap& map,
                                   const std::string& release_id, const NetworkOptions& options = {});

} // namespace serial

} // namespace ecograph
