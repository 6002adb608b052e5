// commlab command-line front end. Flags are resolved into a JSON parameter
// object (flag > COMMLAB_* environment variable > default) and handed to the
// command table, so an invocation and its manifest replay share one path.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "commlab/diagnostics.hpp"
#include "commlab/errors.hpp"
#include "commlab/simd/kernels.hpp"

namespace {

using commlab::cli::json;

struct Common {
    std::uint64_t seed = 0;
    std::string output_dir = ".";
    std::string output;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "RNG seed")->envname("COMMLAB_SEED")->capture_default_str();
    sub->add_option("--output-dir", c.output_dir, "Directory for outputs and manifest.json")
        ->envname("COMMLAB_OUTPUT_DIR")
        ->capture_default_str();
    sub->add_option("--output", c.output, "'-' sends the primary output to stdout");
}

void add_input(CLI::App* sub, std::string& input) {
    sub->add_option("-i,--input", input, "Edge list (u v [w] per line)")->required();
}

void add_louvain(CLI::App* sub, std::string& rule, bool& refine) {
    sub->add_option("--rule", rule, "Local move rule: best or first")
        ->check(CLI::IsMember({"best", "first"}))
        ->capture_default_str();
    sub->add_flag("--refine", refine, "Final single-node refinement pass on the input graph");
}

bool primary_to_stdout(const Common& c) {
    if (!c.output.empty() && c.output != "-") {
        throw commlab::ValidationError("--output only accepts '-'; use --output-dir for files");
    }
    return c.output == "-";
}

int run_and_report(std::string_view subcommand, const json& params, const Common& common) {
    commlab::cli::Artifacts out(common.output_dir, primary_to_stdout(common));
    commlab::cli::execute(subcommand, params, out);
    return 0;
}

int rerun(const std::string& manifest_path, const std::string& output_dir, bool verify) {
    json manifest;
    try {
        manifest = json::parse(commlab::cli::read_file(manifest_path));
    } catch (const json::exception& e) {
        throw commlab::ParseError(0, "manifest '" + manifest_path + "': " + e.what());
    }
    const auto subcommand = manifest.at("subcommand").get<std::string>();
    if (manifest.value("version", "") != COMMLAB_VERSION) {
        std::cerr << "commlab: warning: manifest written by version " << manifest.value("version", "?")
                  << ", this is " << COMMLAB_VERSION << "\n";
    }
    for (const auto& [key, entry] : manifest.at("inputs").items()) {
        const auto path = entry.at("path").get<std::string>();
        if (commlab::cli::sha256_hex(commlab::cli::read_file(path)) != entry.at("sha256").get<std::string>()) {
            throw commlab::ValidationError("input '" + path + "' changed since the manifest was written");
        }
    }
    commlab::cli::Artifacts out(output_dir, manifest.value("primary_to_stdout", false));
    const json replay = commlab::cli::execute(subcommand, manifest.at("parameters"), out);
    if (!verify) return 0;
    std::size_t mismatches = 0;
    for (const auto& [name, digest] : manifest.at("outputs").items()) {
        const auto& now = replay.at("outputs");
        if (!now.contains(name) || now.at(name) != digest) {
            std::cerr << "commlab: " << name << " differs from the manifest\n";
            ++mismatches;
        }
    }
    if (mismatches != 0) throw commlab::ValidationError("rerun did not reproduce the recorded outputs");
    std::cerr << "commlab: reproduced " << manifest.at("outputs").size() << " outputs byte-identically\n";
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Community detection, diagnostics and echo-loop experiments"};
    app.set_version_flag("--version", COMMLAB_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    std::string simd;
    app.add_option("--simd", simd, "Kernel backend: auto, scalar, avx2, neon (env COMMLAB_SIMD)");

    Common common;
    std::string input, partition, rule = "best";
    bool refine = false;

    auto* detect = app.add_subcommand("detect", "Louvain partition of an edge list");
    add_input(detect, input);
    add_common(detect, common);
    add_louvain(detect, rule, refine);
    bool timings = false;
    detect->add_flag("--timings", timings, "Add wall-clock timings to report.json (breaks byte-identical reruns)");

    auto* modularity = app.add_subcommand("modularity", "Q of a given partition");
    add_input(modularity, input);
    modularity->add_option("-p,--partition", partition, "Partition TSV (label<TAB>community)")->required();
    add_common(modularity, common);

    auto* diagnose = app.add_subcommand("diagnose", "Seed ensemble: Q spread, pairwise similarity, co-classification");
    add_input(diagnose, input);
    add_common(diagnose, common);
    add_louvain(diagnose, rule, refine);
    std::string seeds = "0..9", metric = "nmi";
    std::size_t cap = 5000, threads = 0;
    bool matrices = false;
    diagnose->add_option("--seeds", seeds, "Seed list, e.g. 0..9 or 1,4,7")->envname("COMMLAB_SEEDS")->capture_default_str();
    diagnose->add_option("--metric", metric, "nmi, ari or vi")
        ->envname("COMMLAB_METRIC")
        ->check(CLI::IsMember({"nmi", "ari", "vi"}))
        ->capture_default_str();
    diagnose->add_option("--coclassification-cap", cap, "Track a node sample above this size")->capture_default_str();
    diagnose->add_option("--threads", threads, "Worker threads, 0 = all cores")->envname("COMMLAB_THREADS");
    diagnose->add_flag("--matrices", matrices, "Also write similarity.csv and coclassification.csv");

    auto* probe = app.add_subcommand("probe-resolution", "Ring-of-cliques resolution limit probe");
    add_common(probe, common);
    std::size_t cliques = 30, clique_size = 5;
    probe->add_option("-c,--cliques", cliques, "Number of cliques")->capture_default_str();
    probe->add_option("-k,--clique-size", clique_size, "Nodes per clique")->capture_default_str();

    auto* layout = app.add_subcommand("layout", "Fruchterman-Reingold layout rendered as SVG");
    add_input(layout, input);
    add_common(layout, common);
    add_louvain(layout, rule, refine);
    layout->add_option("-p,--partition", partition, "Colour by this partition instead of a Louvain run");
    std::size_t iterations = 500;
    double width = 1000.0, height = 1000.0;
    bool coords = false;
    layout->add_option("--iterations", iterations, "Layout iterations")->envname("COMMLAB_ITERATIONS")->capture_default_str();
    layout->add_option("--width", width, "SVG width")->check(CLI::PositiveNumber)->capture_default_str();
    layout->add_option("--height", height, "SVG height")->check(CLI::PositiveNumber)->capture_default_str();
    layout->add_flag("--coords", coords, "Also write coords.tsv");

    auto* loop = app.add_subcommand("simulate-loop", "Detection / recommendation feedback loop");
    add_input(loop, input);
    add_common(loop, common);
    std::size_t rounds = 10, per_node = 1;
    double acceptance = 1.0;
    std::string detection = "fixed";
    bool final_graph = false;
    loop->add_option("--rounds", rounds, "Rounds after the initial detection")->envname("COMMLAB_ROUNDS")->capture_default_str();
    loop->add_option("--per-node", per_node, "Recommendations per node per round")->capture_default_str();
    loop->add_option("--acceptance", acceptance, "Probability a recommendation is accepted")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    loop->add_option("--detection", detection, "Detection seed policy: fixed or per-round")
        ->check(CLI::IsMember({"fixed", "per-round"}))
        ->capture_default_str();
    loop->add_flag("--final-graph", final_graph, "Also write final_graph.txt and final_partition.tsv");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive modularity maximum (at most 12 nodes)");
    add_input(oracle, input);
    add_common(oracle, common);

    auto* replay = app.add_subcommand("rerun", "Replay a manifest and check its output digests");
    std::string manifest_path, replay_dir = ".";
    bool no_verify = false;
    replay->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
    replay->add_option("--output-dir", replay_dir, "Where the replay writes")->capture_default_str();
    replay->add_flag("--no-verify", no_verify, "Skip the digest comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!simd.empty()) commlab::simd::set_active_backend(commlab::simd::parse_backend(simd));

    if (replay->parsed()) return rerun(manifest_path, replay_dir, !no_verify);

    json params{{"seed", common.seed}};
    if (!input.empty()) params["input"] = input;
    if (detect->parsed() || diagnose->parsed() || layout->parsed()) {
        params["rule"] = rule;
        params["refine"] = refine;
    }
    CLI::App* chosen = app.get_subcommands().front();
    if (detect->parsed()) {
        params["timings"] = timings;
    } else if (modularity->parsed()) {
        params["partition"] = partition;
        params.erase("seed");
    } else if (diagnose->parsed()) {
        params["seeds"] = commlab::cli::parse_seed_list(seeds);
        params["metric"] = metric;
        params["coclassification_cap"] = cap;
        params["threads"] = threads;
        params["matrices"] = matrices;
    } else if (probe->parsed()) {
        params["cliques"] = cliques;
        params["clique_size"] = clique_size;
    } else if (layout->parsed()) {
        if (!partition.empty()) params["partition"] = partition;
        params["iterations"] = iterations;
        params["width"] = width;
        params["height"] = height;
        params["coords"] = coords;
    } else if (loop->parsed()) {
        params["rounds"] = rounds;
        params["per_node"] = per_node;
        params["acceptance"] = acceptance;
        params["detection"] = detection;
        params["final_graph"] = final_graph;
    } else if (oracle->parsed()) {
        params.erase("seed");
    }
    return run_and_report(chosen->get_name(), params, common);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const commlab::Error& e) {
        std::cerr << "commlab: error: " << e.what() << "\n";
        return commlab::exit_code(e.kind());
    } catch (const json::exception& e) {
        std::cerr << "commlab: error: malformed manifest: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "commlab: error: " << e.what() << "\n";
        return 1;
    }
}
