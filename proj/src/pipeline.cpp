#include "ecograph/pipeline.hpp"

#include "ecograph/analytics.hpp"
#include "ecograph/exporters.hpp"
#include "ecograph/graph.hpp"
#include "ecograph/hashing.hpp"
#include "ecograph/ingest.hpp"
#include "ecograph/log.hpp"
#include "ecograph/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ecograph {
namespace fs = std::filesystem;

PipelineConfig PipelineConfig::from_json(const nlohmann::json& config, const fs::path& base_dir) {
    if (!config.is_object()) throw ConfigError("pipeline config must be a JSON object");
    static constexpr std::string_view known[] = {"corpus", "affiliations", "releases", "out",
                                                 "top_n",  "strict",       "committed_only"};
    for (const auto& [key, value] : config.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError("pipeline config: unknown field \"" + key + "\"");
    auto path_of = [&](const char* name) {
        auto it = config.find(name);
        if (it == config.end() || !it->is_string())
            throw ConfigError(std::string("pipeline config: missing string field ") + name);
        fs::path p = it->get<std::string>();
        return p.is_absolute() ? p : base_dir / p;
    };
    PipelineConfig c;
    c.corpus = path_of("corpus");
    c.affiliations = path_of("affiliations");
    c.releases = path_of("releases");
    c.output_dir = path_of("out");
    try {
        c.top_n = config.value("top_n", std::size_t{10});
        c.strict = config.value("strict", false);
        c.committed_only = config.value("committed_only", false);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("pipeline config: ") + e.what());
    }
    return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open pipeline config " + path.string());
    try {
        return from_json(nlohmann::json::parse(in), path.parent_path());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void PipelineConfig::validate() const {
    for (const auto& [label, p] : {std::pair{"corpus", corpus}, {"affiliations", affiliations}, {"releases", releases}})
        if (!fs::is_regular_file(p)) throw ConfigError(std::string(label) + " file not found: " + p.string());
    if (top_n == 0) throw ConfigError("top_n must be positive");
    fs::create_directories(output_dir);
}

UnresolvedContributorsError::UnresolvedContributorsError(std::vector<UnresolvedEntry> report)
    : Error([&] {
          std::string msg = "unresolved contributor emails (strict mode):";
          for (const auto& e : report) msg += "\n  " + e.email + " (" + std::to_string(e.count) + ")";
          return msg;
      }()),
      report_(std::move(report)) {}

namespace {

/// Tracks files written during one run so a failure can roll them back.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    ~OutputSet() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& name : written_) fs::remove(dir_ / name, ec);
        fs::remove(dir_ / kManifestName, ec);
    }

    void write(const std::string& name, const std::string& content) {
        written_.push_back(name);
        std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) throw Error("cannot write " + (dir_ / name).string());
    }

    const std::vector<std::string>& written() const noexcept { return written_; }
    const fs::path& dir() const noexcept { return dir_; }
    void commit() noexcept { committed_ = true; }

private:
    fs::path dir_;
    std::vector<std::string> written_;
    bool committed_ = false;
};

template <class Fn>
std::string render(Fn&& fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

} // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    config.validate();
    std::error_code ec;
    fs::remove(config.output_dir / kManifestName, ec);
    OutputSet outputs(config.output_dir);

    const auto corpus = import_jsonl(config.corpus);
    log::info("import", "corpus loaded", {{"issues", corpus.size()}});

    const AffiliationMap map = AffiliationMap::load(config.affiliations);
    const auto unresolved = unresolved_report(corpus, map);
    if (!unresolved.empty()) {
        if (config.strict) throw UnresolvedContributorsError(unresolved);
        log::warn("resolve", "unresolved emails grouped as _unaffiliated", {{"emails", unresolved.size()}});
    }

    const auto specs = load_release_config(config.releases);
    const ReleaseMap releases = assign_releases(corpus, specs, [](const std::string& msg) {
        log::warn("releases", msg);
    });
    std::size_t in_scope = 0;
    for (const auto& [id, r] : releases) in_scope += r.issues.size();
    if (in_scope == 0) throw Error("no issues in scope");
    log::info("releases", "issues assigned", {{"releases", releases.size()}, {"issues", in_scope}});

    const NetworkOptions net_options{config.committed_only};
    std::vector<ReleaseMetrics> metrics;
    std::vector<InnovationReport> innovation;
    std::vector<IssueContribution> contributions;
    std::vector<ReleaseValues> out_degree, betweenness, closeness;

    for (const Release* release : by_release_date(releases)) {
        const auto issues = release_issues(*release, corpus);
        const CollaborationNetwork net = build_network(issues, map, release->id, net_options);
        for (const IssueRecord& issue : issues)
            if (!patch_contributors(issue, map, net_options).empty())
                contributions.push_back(issue_shares(issue, map, net_options));

        ReleaseMetrics m{release->id, compute_centralities(net), compute_graph_stats(net)};
        log::info("metrics", "release analyzed",
                  {{"release", release->id}, {"vertices", m.stats.vertex_count}, {"edges", m.stats.edge_count}});

        std::map<std::string, double> od, bc, cc;
        for (const auto& [id, row] : m.centralities) {
            od[id] = row.out_degree;
            bc[id] = row.betweenness;
            cc[id] = row.closeness;
        }
        out_degree.emplace_back(release->id, std::move(od));
        betweenness.emplace_back(release->id, std::move(bc));
        closeness.emplace_back(release->id, std::move(cc));
        innovation.push_back(innovation_report(*release, corpus));

        outputs.write("network_" + release->id + ".graphml",
                      render([&](std::ostream& o) { write_graphml(o, net, map); }));
        metrics.push_back(std::move(m));
    }

    const std::vector<RankingSeries> rankings{ranking_series(out_degree, "out_degree"),
                                              ranking_series(betweenness, "betweenness"),
                                              ranking_series(closeness, "closeness")};
    const CategoryCrosstab crosstab = category_crosstab(contributions, map);

    nlohmann::ordered_json summary;
    summary["issues_in_scope"] = in_scope;
    summary["unresolved_emails"] = unresolved.size();
    try {
        summary["self_implementation_ratio"] = self_implementation_ratio(corpus);
    } catch (const std::invalid_argument&) {
        summary["self_implementation_ratio"] = nullptr;
    }

    outputs.write("metrics.csv", render([&](std::ostream& o) { write_metrics_csv(o, metrics); }));
    outputs.write("innovation.csv", render([&](std::ostream& o) { write_innovation_csv(o, innovation); }));
    outputs.write("rankings.csv", render([&](std::ostream& o) { write_rankings_csv(o, rankings, config.top_n); }));
    outputs.write("crosstab.csv", render([&](std::ostream& o) { write_crosstab_csv(o, crosstab); }));

    PipelineResult result;
    nlohmann::ordered_json manifest;
    manifest["generator"] = std::string("ecograph ") + ECOGRAPH_VERSION;
    auto files = nlohmann::ordered_json::array();
    for (const std::string& name : outputs.written()) {
        ManifestEntry entry{name, sha256_file(outputs.dir() / name), fs::file_size(outputs.dir() / name)};
        files.push_back({{"path", entry.path}, {"sha256", entry.sha256}, {"bytes", entry.bytes}});
        result.files.push_back(std::move(entry));
    }
    manifest["files"] = std::move(files);
    manifest["summary"] = std::move(summary);

    result.manifest_path = config.output_dir / kManifestName;
    {
        std::ofstream out(result.manifest_path, std::ios::binary | std::ios::trunc);
        out << manifest.dump(2) << '\n';
        out.close();
        if (!out) throw Error("cannot write " + result.manifest_path.string());
    }
    outputs.commit();
    log::info("export", "pipeline finished", {{"files", result.files.size()}});
    return result;
}

} // namespace ecograph
