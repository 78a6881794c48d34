#pragma once

#include "ecograph/analytics.hpp"
#include "ecograph/graph.hpp"
#include "ecograph/identity.hpp"
#include "ecograph/metrics.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ecograph {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_shortest(double value);

/// `%.10g`, the precision used for exported edge weights.
std::string format_weight(double value);

/// RFC 4180 writer: fields quoted only when needed, LF line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

    static std::string quote(std::string_view field);

private:
    std::ostream& out_;
};

void write_graphml(std::ostream& out, const CollaborationNetwork& net, const AffiliationMap& map);
void write_dot(std::ostream& out, const CollaborationNetwork& net, const AffiliationMap& map);

/// Stakeholder rows under `release,stakeholder,out_degree,betweenness,closeness`,
/// then graph rows under `release,vertex_count,edge_count,acc,gd`.
struct ReleaseMetrics {
    std::string release_id;
    CentralityTable centralities;
    GraphStats stats;
};

void write_metrics_csv(std::ostream& out, const std::vector<ReleaseMetrics>& releases);

/// One row per release, then `avg`/`median`/`std` summary rows.
void write_innovation_csv(std::ostream& out, const std::vector<InnovationReport>& reports);

/// Per-release rows for the top stakeholders plus an `average` row each
/// (value = accumulated, rank = average rank at one decimal).
void write_rankings_csv(std::ostream& out, const std::vector<RankingSeries>& series, std::size_t top_n);

/// Upper-triangle cells over the labeled categories and a trailing
/// `unknown,*` row with the excluded pair count.
void write_crosstab_csv(std::ostream& out, const CategoryCrosstab& table);

} // namespace ecograph
