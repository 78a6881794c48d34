#include "ecograph/exporters.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>

namespace ecograph {
namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

} // namespace

std::string format_shortest(double value) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string format_weight(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

std::string CsvWriter::quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote(fields[i]);
    }
    out_ << '\n';
}

void write_graphml(std::ostream& out, const CollaborationNetwork& net, const AffiliationMap& map) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"id\" for=\"node\" attr.name=\"id\" attr.type=\"string\"/>\n"
        << "  <key id=\"category\" for=\"node\" attr.name=\"category\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"" << xml_escape(net.release_id()) << "\" edgedefault=\"directed\">\n";
    for (const std::string& v : net.vertices()) {
        const std::string id = xml_escape(v);
        out << "    <node id=\"" << id << "\">\n"
            << "      <data key=\"id\">" << id << "</data>\n"
            << "      <data key=\"category\">" << to_string(map.category_of(v)) << "</data>\n"
            << "    </node>\n";
    }
    for (const Edge& e : net.edges()) {
        out << "    <edge source=\"" << xml_escape(net.vertices()[e.source]) << "\" target=\""
            << xml_escape(net.vertices()[e.target]) << "\">\n"
            << "      <data key=\"weight\">" << format_weight(e.weight) << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const CollaborationNetwork& net, const AffiliationMap& map) {
    out << "digraph " << dot_quote(net.release_id()) << " {\n";
    for (const std::string& v : net.vertices()) {
        out << "  " << dot_quote(v) << " [id=" << dot_quote(v)
            << ", category=" << dot_quote(to_string(map.category_of(v))) << "];\n";
    }
    for (const Edge& e : net.edges()) {
        out << "  " << dot_quote(net.vertices()[e.source]) << " -> " << dot_quote(net.vertices()[e.target])
            << " [weight=" << format_weight(e.weight) << "];\n";
    }
    out << "}\n";
}

void write_metrics_csv(std::ostream& out, const std::vector<ReleaseMetrics>& releases) {
    CsvWriter csv(out);
    csv.row({"release", "stakeholder", "out_degree", "betweenness", "closeness"});
    for (const auto& r : releases)
        for (const auto& [id, row] : r.centralities)
            csv.row({r.release_id, id, format_shortest(row.out_degree), format_shortest(row.betweenness),
                     format_shortest(row.closeness)});
    csv.row({"release", "vertex_count", "edge_count", "acc", "gd"});
    for (const auto& r : releases)
        csv.row({r.release_id, std::to_string(r.stats.vertex_count), std::to_string(r.stats.edge_count),
                 format_shortest(r.stats.average_clustering_coefficient), format_shortest(r.stats.graph_density)});
}

void write_innovation_csv(std::ostream& out, const std::vector<InnovationReport>& reports) {
    CsvWriter csv(out);
    csv.row({"release", "feature", "improvement", "bug", "other", "change_size_loc", "cycle_time_days"});
    for (const auto& r : reports)
        csv.row({r.release_id, std::to_string(r.feature_count), std::to_string(r.improvement_count),
                 std::to_string(r.bug_count), std::to_string(r.other_count), std::to_string(r.change_size_loc),
                 format_shortest(r.cycle_time_days)});
    if (reports.empty()) return;
    const IssueTypeStatistics stats = issue_type_statistics(reports);
    auto summary = [&](const char* label, double SummaryStatistics::*field) {
        csv.row({label, format_shortest(stats.feature.*field), format_shortest(stats.improvement.*field),
                 format_shortest(stats.bug.*field), format_shortest(stats.other.*field),
                 format_shortest(stats.change_size_loc.*field), format_shortest(stats.cycle_time_days.*field)});
    };
    summary("avg", &SummaryStatistics::mean);
    summary("median", &SummaryStatistics::median);
    summary("std", &SummaryStatistics::stddev);
}

void write_rankings_csv(std::ostream& out, const std::vector<RankingSeries>& series, std::size_t top_n) {
    CsvWriter csv(out);
    csv.row({"metric", "release", "stakeholder", "value", "rank"});
    for (const RankingSeries& s : series) {
        const auto top = s.top(top_n);
        for (const ReleaseRanking& r : s.releases)
            for (const RankedStakeholder& e : r.entries)
                if (std::find(top.begin(), top.end(), e.stakeholder) != top.end())
                    csv.row({s.metric_name, r.release_id, e.stakeholder, format_shortest(e.value),
                             std::to_string(e.rank)});
        for (const std::string& id : top)
            csv.row({s.metric_name, "average", id, format_shortest(s.accumulated.at(id)),
                     format_one_decimal(s.average_rank.at(id))});
    }
}

void write_crosstab_csv(std::ostream& out, const CategoryCrosstab& table) {
    CsvWriter csv(out);
    csv.row({"category_a", "category_b", "count"});
    for (std::size_t i = 0; i < std::size(kLabeledCategories); ++i)
        for (std::size_t j = i; j < std::size(kLabeledCategories); ++j)
            csv.row({std::string(to_string(kLabeledCategories[i])), std::string(to_string(kLabeledCategories[j])),
                     std::to_string(table.count(kLabeledCategories[i], kLabeledCategories[j]))});
    csv.row({"unknown", "*", std::to_string(table.unknown_pairs)});
}

} // namespace ecograph
