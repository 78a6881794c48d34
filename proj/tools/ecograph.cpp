#include "ecograph/analytics.hpp"
#include "ecograph/exporters.hpp"
#include "ecograph/graph.hpp"
#include "ecograph/identity.hpp"
#include "ecograph/ingest.hpp"
#include "ecograph/log.hpp"
#include "ecograph/metrics.hpp"
#include "ecograph/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <variant>

namespace fs = std::filesystem;
using namespace ecograph;

namespace {

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::vector<IssueRecord> select_release(const std::vector<IssueRecord>& corpus, const std::string& release_id,
                                        const std::string& releases_file) {
    if (releases_file.empty()) return issues_with_prefix(corpus, release_id);
    const auto releases = assign_releases(corpus, load_release_config(releases_file),
                                          [](const std::string& m) { log::warn("releases", m); });
    auto it = releases.find(release_id);
    if (it == releases.end()) throw ConfigError("release " + release_id + " is not configured in " + releases_file);
    return release_issues(it->second, corpus);
}

int run_crawl(const CrawlOptions& options, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    SessionLog session(out_dir / "raw" / "session.jsonl");
    RecordStore store(out_dir / "records");
    nlohmann::ordered_json state;
    state["endpoint"] = options.endpoint;
    state["query"] = options.query;
    state["page_size"] = options.page_size;
    auto save_state = [&] {
        auto out = open_output(out_dir / "session.json");
        out << state.dump(2) << '\n';
    };

    std::size_t parse_failures = 0;
    auto sink = [&](const RawIssueDocument& doc) {
        try {
            store.put(parse_issue(doc, [](const std::string& m) { log::warn("parse", m); }));
        } catch (const ParseError& e) {
            ++parse_failures;
            log::event("error", "parse", e.what(), {{"source_id", e.source_id()}});
        }
    };

    try {
        const CrawlStats stats = crawl(options, session, sink);
        state["status"] = "complete";
        state["documents"] = stats.documents;
        state["pages"] = stats.pages;
        state["retries"] = stats.retries;
        state["parse_failures"] = parse_failures;
        save_state();
    } catch (const CrawlAborted& e) {
        state["status"] = "aborted";
        state["cursor"] = e.cursor();
        state["error"] = e.what();
        save_state();
        throw;
    } catch (const HttpClientError& e) {
        state["status"] = "failed";
        state["error"] = e.what();
        save_state();
        throw;
    }
    export_jsonl(out_dir / "issues.jsonl", store.all());
    return parse_failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stakeholder collaboration networks and release analytics from issue-tracker data", "ecograph"};
    app.set_version_flag("--version", std::string("ecograph ") + ECOGRAPH_VERSION);
    app.require_subcommand(1);

    // crawl
    CrawlOptions crawl_opts;
    crawl_opts.timeout = http_timeout_from_env();
    std::string crawl_out;
    auto* crawl_cmd = app.add_subcommand("crawl", "Fetch issues from a JIRA search API");
    crawl_cmd->add_option("--endpoint", crawl_opts.endpoint, "Tracker base URL")->required();
    crawl_cmd->add_option("--query", crawl_opts.query, "JQL query")->required();
    crawl_cmd->add_option("--out", crawl_out, "Session directory")->required();
    crawl_cmd->add_option("--page-size", crawl_opts.page_size, "Results per page")
        ->capture_default_str()->check(CLI::PositiveNumber);
    crawl_cmd->add_option("--start-at", crawl_opts.start_at, "Resume cursor from an aborted session");
    crawl_cmd->add_option("--max-in-flight", crawl_opts.max_in_flight, "Concurrent page requests")
        ->capture_default_str()->check(CLI::PositiveNumber);

    // import
    std::string import_in;
    auto* import_cmd = app.add_subcommand("import", "Validate a canonical issue JSONL file");
    import_cmd->add_option("--in", import_in, "Canonical JSONL")->required()->check(CLI::ExistingFile);

    // resolve
    std::string resolve_map, resolve_in;
    bool report_unresolved = false;
    auto* resolve_cmd = app.add_subcommand("resolve", "Resolve contributor emails to stakeholders");
    resolve_cmd->add_option("--map", resolve_map, "Affiliation config")->required()->check(CLI::ExistingFile);
    resolve_cmd->add_option("--in", resolve_in, "Canonical JSONL")->required()->check(CLI::ExistingFile);
    resolve_cmd->add_flag("--report-unresolved", report_unresolved, "Only list unresolved emails with counts");

    // network
    std::string net_release, net_in, net_map, net_graphml, net_dot, net_releases;
    bool net_committed = false;
    auto* network_cmd = app.add_subcommand("network", "Build one release's collaboration network");
    network_cmd->add_option("--release", net_release, "Release id, e.g. R2.7")->required();
    network_cmd->add_option("--in", net_in, "Canonical JSONL")->required()->check(CLI::ExistingFile);
    network_cmd->add_option("--map", net_map, "Affiliation config")->required()->check(CLI::ExistingFile);
    auto* graphml_opt = network_cmd->add_option("--out-graphml", net_graphml, "GraphML output");
    auto* dot_opt = network_cmd->add_option("--out-dot", net_dot, "DOT output");
    network_cmd->callback([graphml_opt, dot_opt] {
        if (graphml_opt->count() == 0 && dot_opt->count() == 0)
            throw CLI::RequiredError("--out-graphml or --out-dot");
    });
    network_cmd->add_option("--releases", net_releases, "Release config (enables earliest-release arbitration)")
        ->check(CLI::ExistingFile);
    network_cmd->add_flag("--committed-only", net_committed, "Count approved patches only");

    // metrics
    std::string met_release, met_in, met_map, met_csv, met_releases;
    bool met_committed = false;
    auto* metrics_cmd = app.add_subcommand("metrics", "Network metrics for one release");
    metrics_cmd->add_option("--release", met_release, "Release id")->required();
    metrics_cmd->add_option("--in", met_in, "Canonical JSONL")->required()->check(CLI::ExistingFile);
    metrics_cmd->add_option("--map", met_map, "Affiliation config")->required()->check(CLI::ExistingFile);
    metrics_cmd->add_option("--out-csv", met_csv, "CSV output")->required();
    metrics_cmd->add_option("--releases", met_releases, "Release config")->check(CLI::ExistingFile);
    metrics_cmd->add_flag("--committed-only", met_committed, "Count approved patches only");

    // analyze
    PipelineConfig analyze_cfg;
    std::string an_in, an_map, an_releases, an_out;
    auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis over all configured releases");
    analyze_cmd->add_option("--in", an_in, "Canonical JSONL")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--map", an_map, "Affiliation config")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--releases", an_releases, "Release config")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--out", an_out, "Output directory")->required();
    analyze_cmd->add_option("--top-n", analyze_cfg.top_n, "Stakeholders per ranking")
        ->capture_default_str()->check(CLI::PositiveNumber);
    analyze_cmd->add_flag("--strict", analyze_cfg.strict, "Abort on unresolved contributor emails");
    analyze_cmd->add_flag("--committed-only", analyze_cfg.committed_only, "Count approved patches only");

    // run
    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "Run the pipeline described by a config file");
    run_cmd->add_option("--config", run_config, "Pipeline config JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors exit 2; --help and --version exit 0
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*crawl_cmd) return run_crawl(crawl_opts, crawl_out);

        if (*import_cmd) {
            const auto issues = import_jsonl(import_in);
            std::size_t patches = 0;
            for (const auto& i : issues) patches += i.patches.size();
            std::cout << nlohmann::ordered_json{{"issues", issues.size()}, {"patches", patches}}.dump() << '\n';
            return 0;
        }

        if (*resolve_cmd) {
            const auto corpus = import_jsonl(resolve_in);
            const auto map = AffiliationMap::load(resolve_map);
            CsvWriter csv(std::cout);
            if (report_unresolved) {
                csv.row({"email", "count"});
                for (const auto& e : unresolved_report(corpus, map)) csv.row({e.email, std::to_string(e.count)});
                return 0;
            }
            std::set<std::string> emails;
            for (const auto& issue : corpus) {
                emails.insert(issue.reporter_email);
                for (const auto& p : issue.patches) emails.insert(p.author_email);
            }
            csv.row({"email", "stakeholder", "category"});
            for (const auto& email : emails) {
                const Resolution r = resolve(email, map);
                if (const auto* s = std::get_if<Stakeholder>(&r))
                    csv.row({email, s->id, std::string(to_string(s->user_category))});
                else
                    csv.row({email, "", "unresolved"});
            }
            return 0;
        }

        if (*network_cmd) {
            const auto corpus = import_jsonl(net_in);
            const auto map = AffiliationMap::load(net_map);
            const auto net = build_network(select_release(corpus, net_release, net_releases), map, net_release,
                                           NetworkOptions{net_committed});
            if (!net_graphml.empty()) {
                auto out = open_output(net_graphml);
                write_graphml(out, net, map);
            }
            if (!net_dot.empty()) {
                auto dot = open_output(net_dot);
                write_dot(dot, net, map);
            }
            log::info("network", "network written",
                      {{"release", net_release}, {"vertices", net.vertex_count()}, {"edges", net.edge_count()}});
            return 0;
        }

        if (*metrics_cmd) {
            const auto corpus = import_jsonl(met_in);
            const auto map = AffiliationMap::load(met_map);
            const auto net = build_network(select_release(corpus, met_release, met_releases), map, met_release,
                                           NetworkOptions{met_committed});
            auto out = open_output(met_csv);
            write_metrics_csv(out, {ReleaseMetrics{met_release, compute_centralities(net), compute_graph_stats(net)}});
            return 0;
        }

        if (*analyze_cmd || *run_cmd) {
            PipelineConfig cfg = analyze_cfg;
            if (*run_cmd) {
                cfg = PipelineConfig::load(run_config);
            } else {
                cfg.corpus = an_in;
                cfg.affiliations = an_map;
                cfg.releases = an_releases;
                cfg.output_dir = an_out;
            }
            const PipelineResult result = run_pipeline(cfg);
            std::cout << result.manifest_path.string() << '\n';
            return 0;
        }
    } catch (const UnresolvedContributorsError& e) {
        log::event("error", "resolve", "unresolved contributors in strict mode", {{"count", e.report().size()}});
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        log::event("error", "main", e.what());
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
