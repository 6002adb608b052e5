#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <map>
#include <sstream>

#include "commlab/diagnostics.hpp"
#include "commlab/echo_loop.hpp"
#include "commlab/errors.hpp"
#include "commlab/format.hpp"
#include "commlab/graph.hpp"
#include "commlab/layout.hpp"
#include "commlab/louvain.hpp"
#include "commlab/modularity.hpp"
#include "commlab/partition.hpp"

namespace commlab::cli {

namespace {

ParsedGraph read_graph(const json& params, Inputs& inputs) {
    return parse_edge_list(std::string_view(inputs.read(params, "input")));
}

Partition read_partition(const json& params, Inputs& inputs, const std::string& key, const Graph& g) {
    std::istringstream in(inputs.read(params, key));
    return read_partition_tsv(in, g);
}

LouvainOptions louvain_options(const json& params) {
    LouvainOptions options;
    const std::string rule = params.value("rule", "best");
    if (rule == "best") {
        options.rule = MoveRule::best_improvement;
    } else if (rule == "first") {
        options.rule = MoveRule::first_improvement;
    } else {
        throw ValidationError("unknown move rule '" + rule + "' (expected best or first)");
    }
    options.refine_final = params.value("refine", false);
    return options;
}

std::string partition_tsv(const Graph& g, const Partition& p) {
    std::ostringstream out;
    write_partition_tsv(out, g, p);
    return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void cmd_detect(const json& params, Inputs& inputs, Artifacts& out) {
    const ParsedGraph parsed = read_graph(params, inputs);
    const Graph& g = parsed.graph;
    const auto seed = params.at("seed").get<std::uint64_t>();
    const auto started = std::chrono::steady_clock::now();
    const LouvainResult result = louvain(g, seed, louvain_options(params));
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    const double q = modularity(g, result.partition);

    json report{
        {"nodes", g.node_count()},
        {"edges", g.edge_count()},
        {"total_weight", g.total_weight()},
        {"duplicate_edges", parsed.duplicate_edges},
        {"seed", seed},
        {"q", q},
        {"q_trace", result.q_trace},
        {"levels", result.levels.size()},
        {"passes", result.passes},
        {"refinement_moves", result.refinement_moves},
        {"communities", result.partition.community_count()},
        {"community_sizes", result.partition.community_sizes()},
    };
    // Wall-clock time breaks byte-identical reruns, so it is opt-in.
    if (params.value("timings", false)) report["timings"] = {{"louvain_ms", elapsed.count()}};

    out.primary("partition.tsv", partition_tsv(g, result.partition));
    out.add("report.json", dump(report));
    out.human() << "nodes " << g.node_count() << ", edges " << g.edge_count() << ", communities "
                << result.partition.community_count() << ", Q " << format_human(q) << "\n";
}

void cmd_modularity(const json& params, Inputs& inputs, Artifacts& out) {
    const ParsedGraph parsed = read_graph(params, inputs);
    const Partition p = read_partition(params, inputs, "partition", parsed.graph);
    const std::string line = format_human(modularity(parsed.graph, p)) + "\n";
    out.primary("modularity.txt", line);
    if (!out.primary_to_stdout()) out.human() << line;
}

std::string similarity_csv(const DiagnosticsReport& report) {
    std::ostringstream csv;
    csv << "seed";
    for (const auto& run : report.runs) csv << ',' << run.seed;
    csv << '\n';
    for (std::size_t a = 0; a < report.runs.size(); ++a) {
        csv << report.runs[a].seed;
        for (std::size_t b = 0; b < report.runs.size(); ++b) csv << ',' << format_shortest(report.similarity(a, b));
        csv << '\n';
    }
    return csv.str();
}

std::string coclassification_csv(const Graph& g, const CoClassification& co) {
    std::ostringstream csv;
    csv << "label";
    for (NodeId v : co.nodes) csv << ',' << g.label(v);
    csv << '\n';
    for (std::size_t a = 0; a < co.dimension(); ++a) {
        csv << g.label(co.nodes[a]);
        for (std::size_t b = 0; b < co.dimension(); ++b) csv << ',' << format_shortest(co.at(a, b));
        csv << '\n';
    }
    return csv.str();
}

void cmd_diagnose(const json& params, Inputs& inputs, Artifacts& out) {
    const ParsedGraph parsed = read_graph(params, inputs);
    const Graph& g = parsed.graph;
    const auto seeds = params.at("seeds").get<std::vector<std::uint64_t>>();
    EnsembleOptions options;
    options.metric = parse_metric(params.at("metric").get<std::string>());
    options.coclassification_cap = params.at("coclassification_cap").get<std::size_t>();
    options.sample_seed = params.at("seed").get<std::uint64_t>();
    options.threads = params.value("threads", std::size_t{0});
    options.louvain = louvain_options(params);
    const DiagnosticsReport report = run_ensemble(g, seeds, options);

    json runs = json::array();
    for (const auto& run : report.runs) {
        runs.push_back({{"seed", run.seed}, {"q", run.q}, {"communities", run.communities}, {"sizes", run.sizes}});
    }
    json pairwise = json::array();
    for (std::size_t a = 0; a < report.runs.size(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < report.runs.size(); ++b) row.push_back(report.similarity(a, b));
        pairwise.push_back(std::move(row));
    }
    const auto& s = report.summary;
    const json doc{
        {"nodes", g.node_count()},
        {"edges", g.edge_count()},
        {"metric", metric_name(report.metric)},
        {"runs", runs},
        {"pairwise", pairwise},
        {"summary",
         {{"q_mean", s.q_mean},
          {"q_min", s.q_min},
          {"q_max", s.q_max},
          {"similarity_mean", s.similarity_mean},
          {"similarity_min", s.similarity_min},
          {"similarity_max", s.similarity_max}}},
        {"coclassification",
         {{"tracked_nodes", report.coclassification.dimension()},
          {"sampled", report.coclassification.sampled},
          {"runs", report.coclassification.runs}}},
    };
    out.primary("diagnostics.json", dump(doc));
    if (params.value("matrices", false)) {
        out.add("similarity.csv", similarity_csv(report));
        out.add("coclassification.csv", coclassification_csv(g, report.coclassification));
    }
    out.human() << report.runs.size() << " runs, Q mean " << format_human(s.q_mean) << " [" << format_human(s.q_min)
                << ", " << format_human(s.q_max) << "], " << metric_name(report.metric) << " mean "
                << format_human(s.similarity_mean) << " [" << format_human(s.similarity_min) << ", "
                << format_human(s.similarity_max) << "]\n";
}

void cmd_probe_resolution(const json& params, Inputs&, Artifacts& out) {
    const auto r = resolution_probe(params.at("cliques").get<std::size_t>(),
                                    params.at("clique_size").get<std::size_t>(),
                                    params.at("seed").get<std::uint64_t>());
    const json doc{
        {"cliques", r.cliques},
        {"clique_size", r.clique_size},
        {"seed", r.seed},
        {"q_singleton_cliques", r.q_singleton_cliques},
        {"q_merged_pairs", r.q_merged_pairs},
        {"louvain_community_count", r.louvain_community_count},
        {"louvain_q", r.louvain_q},
        {"limit_manifested", r.limit_manifested},
    };
    out.primary("probe.json", dump(doc));
    out.human() << "ring of " << r.cliques << " K" << r.clique_size << ": one per clique Q "
                << format_human(r.q_singleton_cliques) << ", merged pairs Q " << format_human(r.q_merged_pairs)
                << ", louvain " << r.louvain_community_count << " communities, limit "
                << (r.limit_manifested ? "manifested" : "not manifested") << "\n";
}

void cmd_layout(const json& params, Inputs& inputs, Artifacts& out) {
    const ParsedGraph parsed = read_graph(params, inputs);
    const Graph& g = parsed.graph;
    const auto seed = params.at("seed").get<std::uint64_t>();
    Partition p = params.contains("partition") ? read_partition(params, inputs, "partition", g)
                  : g.total_weight() > 0.0     ? louvain(g, seed, louvain_options(params)).partition
                                               : Partition::singletons(g.node_count());
    const LayoutCoords coords = fruchterman_reingold(g, seed, params.at("iterations").get<std::size_t>());
    SvgOptions svg;
    svg.width = params.at("width").get<double>();
    svg.height = params.at("height").get<double>();
    out.primary("layout.svg", render_svg(g, coords, p, svg));
    if (params.value("coords", false)) {
        std::ostringstream tsv;
        write_coords_tsv(tsv, g, coords);
        out.add("coords.tsv", tsv.str());
    }
    out.human() << "laid out " << g.node_count() << " nodes, " << g.edge_count() << " edges, "
                << p.community_count() << " communities\n";
}

void cmd_simulate_loop(const json& params, Inputs& inputs, Artifacts& out) {
    const ParsedGraph parsed = read_graph(params, inputs);
    LoopConfig cfg;
    cfg.rounds = params.at("rounds").get<std::size_t>();
    cfg.recommendations_per_node = params.at("per_node").get<std::size_t>();
    cfg.acceptance_probability = params.at("acceptance").get<double>();
    cfg.detection = parse_policy(params.at("detection").get<std::string>());
    cfg.seed = params.at("seed").get<std::uint64_t>();
    const LoopTrajectory t = simulate_loop(parsed.graph, cfg);

    std::ostringstream csv;
    write_trajectory_csv(csv, t);
    out.primary("trajectory.csv", csv.str());
    if (params.value("final_graph", false)) {
        std::ostringstream edges;
        write_edge_list(edges, t.final_graph);
        out.add("final_graph.txt", edges.str());
        out.add("final_partition.tsv", partition_tsv(t.final_graph, t.final_partition));
    }
    const auto& first = t.records.front();
    const auto& last = t.records.back();
    out.human() << t.records.size() - 1 << " rounds, mixing ratio " << format_human(first.mixing_ratio) << " -> "
                << format_human(last.mixing_ratio) << ", Q " << format_human(first.q) << " -> "
                << format_human(last.q) << "\n";
}

void cmd_oracle(const json& params, Inputs& inputs, Artifacts& out) {
    const ParsedGraph parsed = read_graph(params, inputs);
    const OracleResult best = brute_force_best_partition(parsed.graph);
    out.primary("partition.tsv", partition_tsv(parsed.graph, best.partition));
    out.add("oracle.json", dump({{"nodes", parsed.graph.node_count()},
                                 {"q", best.q},
                                 {"communities", best.partition.community_count()},
                                 {"partitions_evaluated", best.partitions_evaluated}}));
    out.human() << "best Q " << format_human(best.q) << " over " << best.partitions_evaluated
                << " partitions, " << best.partition.community_count() << " communities\n";
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ValidationError("bad seed '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

CommandFn find_command(std::string_view name) {
    static const std::map<std::string_view, CommandFn> table{
        {"detect", &cmd_detect},
        {"modularity", &cmd_modularity},
        {"diagnose", &cmd_diagnose},
        {"probe-resolution", &cmd_probe_resolution},
        {"layout", &cmd_layout},
        {"simulate-loop", &cmd_simulate_loop},
        {"oracle", &cmd_oracle},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw ValidationError("unknown subcommand '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> seeds;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            seeds.push_back(parse_u64(item));
        } else {
            const std::uint64_t lo = parse_u64(item.substr(0, dots));
            const std::uint64_t hi = parse_u64(item.substr(dots + 2));
            if (hi < lo || hi - lo >= 1'000'000) throw ValidationError("bad seed range '" + std::string(item) + "'");
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        }
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) throw ValidationError("trailing comma in seed list");
    }
    if (seeds.empty()) throw ValidationError("empty seed list");
    return seeds;
}

json execute(std::string_view subcommand, const json& params, Artifacts& out) {
    Inputs inputs;
    find_command(subcommand)(params, inputs, out);
    json manifest = make_manifest(subcommand, params, inputs, out);
    write_file(out.dir() / kManifestName, dump_manifest(manifest));
    return manifest;
}

}  // namespace commlab::cli
