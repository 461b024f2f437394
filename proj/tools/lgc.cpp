#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgc/adaptive_walk.hpp"
#include "lgc/diffusion.hpp"
#include "lgc/experiment.hpp"
#include "lgc/fcm.hpp"
#include "lgc/generators.hpp"
#include "lgc/graph.hpp"
#include "lgc/quality.hpp"
#include "lgc/report_json.hpp"
#include "lgc/text_format.hpp"

namespace {

using namespace lgc;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
    }
    return v;
}

std::size_t parse_size(const std::string& s, const char* what) {
    std::size_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
    }
    return v;
}

// "f:steps,f:steps"
std::vector<WalkPhase> parse_schedule(const std::string& text) {
    std::vector<WalkPhase> phases;
    for (const auto& item : split(text, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("schedule entry '" + item + "' is not f:steps");
        phases.push_back({parse_double(item.substr(0, colon), "factor"), parse_size(item.substr(colon + 1), "steps")});
    }
    if (phases.empty()) throw std::invalid_argument("empty f-schedule");
    return phases;
}

StepKernel parse_kernel(const std::string& name) {
    if (name == "serial") return StepKernel::serial;
    if (name == "parallel") return StepKernel::parallel;
    throw std::invalid_argument("unknown kernel '" + name + "'");
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    fn(out);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<Vertex> top_degree(const Graph& g, std::size_t count) {
    std::vector<Vertex> order(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    order.resize(std::min(count, order.size()));
    return order;
}

struct Common {
    std::string graph;
    Graph load() const { return load_edge_list_file(graph).graph; }
};

void add_graph_option(CLI::App* cmd, Common& c) {
    cmd->add_option("--graph", c.graph, "Edge-list file")->required();
}

struct DiffusionFlags {
    double alpha = 1e-5;
    std::size_t max_iters = 1000;
    double eps = 1e-9;
    std::string kernel = "serial";

    void add(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "Truncation threshold")->capture_default_str();
        cmd->add_option("--max-iters", max_iters, "Iteration cap")->capture_default_str();
        cmd->add_option("--eps", eps, "L1 convergence threshold")->capture_default_str();
        cmd->add_option("--kernel", kernel, "serial | parallel")->capture_default_str();
    }
    DiffusionConfig config() const {
        DiffusionConfig cfg;
        cfg.alpha = alpha;
        cfg.max_iterations = max_iters;
        cfg.convergence_epsilon = eps;
        cfg.kernel = parse_kernel(kernel);
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local graph clustering by truncated lazy-walk diffusion"};
    app.require_subcommand(1);

    Common common;

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Diffusion cluster around one seed");
    add_graph_option(cluster, common);
    std::string seed_label, out_path, telemetry_path;
    bool wall_clock = false;
    DiffusionFlags dflags;
    cluster->add_option("--seed", seed_label, "Seed vertex label")->required();
    dflags.add(cluster);
    cluster->add_option("--out", out_path, "ClusterReport JSON (default stdout)");
    cluster->add_option("--telemetry-out", telemetry_path, "Per-iteration CSV");
    cluster->add_flag("--wall-clock", wall_clock, "Include wall time in telemetry");

    // walk
    auto* walk = app.add_subcommand("walk", "Adaptive random-walk cluster around one seed");
    add_graph_option(walk, common);
    std::string schedule_text;
    double walk_alpha = 1.0, walk_beta = 100.0;
    std::uint64_t walk_rng = 0;
    std::size_t expected_size = 10;
    bool literal_init = false;
    walk->add_option("--seed", seed_label, "Seed vertex label")->required();
    walk->add_option("--f-schedule", schedule_text, "Phases as f:steps,f:steps (default from --expected-size)");
    walk->add_option("--expected-size", expected_size, "Expected cluster size for the default schedule")
        ->capture_default_str();
    walk->add_option("--alpha", walk_alpha, "Background energy numerator")->capture_default_str();
    walk->add_option("--beta", walk_beta, "Seed energy numerator")->capture_default_str();
    walk->add_option("--rng", walk_rng, "RNG seed")->capture_default_str();
    walk->add_flag("--literal-init", literal_init, "Background energy alpha/d_seed for every vertex");
    walk->add_option("--out", out_path, "ClusterReport JSON (default stdout)");

    // partition
    auto* partition = app.add_subcommand("partition", "Cover the graph with diffusion clusters");
    add_graph_option(partition, common);
    std::string json_path;
    dflags.add(partition);
    partition->add_option("--out", out_path, "Partition CSV (default stdout)");
    partition->add_option("--json", json_path, "Partition JSON with per-block details");

    // overlap
    auto* overlap = app.add_subcommand("overlap", "Fuzzy c-means over a diffusion embedding");
    add_graph_option(overlap, common);
    std::string centers_text, memberships_path;
    OverlapConfig ocfg;
    bool raw_embedding = false;
    overlap->add_option("--centers", centers_text, "Comma-separated labels, or auto:D")->required();
    overlap->add_option("--k", ocfg.fcm.k, "Number of fuzzy clusters")->capture_default_str();
    overlap->add_option("--m", ocfg.fcm.fuzzifier, "Fuzzifier (> 1)")->capture_default_str();
    overlap->add_option("--alpha", ocfg.diffusion.alpha, "Embedding truncation threshold")->capture_default_str();
    overlap->add_option("--restarts", ocfg.fcm.restarts, "FCM restarts")->capture_default_str();
    overlap->add_option("--rng", ocfg.fcm.rng_seed, "RNG seed")->capture_default_str();
    overlap->add_option("--threshold", ocfg.threshold, "Membership threshold in (0, 0.5]")->capture_default_str();
    overlap->add_flag("--raw", raw_embedding, "Cluster raw mass rather than row-normalised affinity");
    overlap->add_option("--out", out_path, "Overlap JSON (default stdout)");
    overlap->add_option("--memberships-out", memberships_path, "Membership CSV");

    // eval
    auto* eval = app.add_subcommand("eval", "Score a stored partition");
    add_graph_option(eval, common);
    std::string partition_path;
    eval->add_option("--partition", partition_path, "vertex,block CSV")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Telemetry sweep over seeds and alphas");
    add_graph_option(bench, common);
    std::string convergence_path, clusters_path, alphas_text = "1e-3,1e-5,1e-6,1e-7", seeds_text;
    std::size_t num_seeds = 4;
    bool with_partition = false;
    bench->add_option("--telemetry-out", telemetry_path, "Time-vs-iterations CSV")->required();
    bench->add_option("--convergence-out", convergence_path, "L1-convergence-vs-iterations CSV");
    bench->add_option("--clusters-out", clusters_path, "Cluster JSON");
    bench->add_option("--summary-out", out_path, "Summary JSON (default stdout)");
    bench->add_option("--alphas", alphas_text, "Comma-separated alphas")->capture_default_str();
    bench->add_option("--seeds", seeds_text, "Comma-separated seed labels (default: highest degree)");
    bench->add_option("--num-seeds", num_seeds, "Seeds taken when --seeds is absent")->capture_default_str();
    bench->add_option("--max-iters", dflags.max_iters, "Iteration cap")->capture_default_str();
    bench->add_option("--eps", dflags.eps, "L1 convergence threshold")->capture_default_str();
    bench->add_option("--kernel", dflags.kernel, "serial | parallel")->capture_default_str();
    bench->add_flag("--partition", with_partition, "Also score a full partition per alpha");
    bench->add_flag("--wall-clock", wall_clock, "Include wall time in telemetry");

    // generate
    auto* generate = app.add_subcommand("generate", "Write a synthetic graph");
    std::string kind;
    std::size_t gen_count = 3, gen_size = 5;
    double p_in = 0.5, p_out = 0.01;
    std::uint64_t gen_seed = 0;
    generate->add_option("--kind", kind, "two-cliques | ring | planted | gnp")->required();
    generate->add_option("--count", gen_count, "Number of cliques/blocks, or n for gnp")->capture_default_str();
    generate->add_option("--size", gen_size, "Clique/block size")->capture_default_str();
    generate->add_option("--p-in", p_in, "Intra-block (or gnp) edge probability")->capture_default_str();
    generate->add_option("--p-out", p_out, "Inter-block edge probability")->capture_default_str();
    generate->add_option("--rng", gen_seed, "RNG seed")->capture_default_str();
    generate->add_option("--out", out_path, "Edge list (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cluster) {
            auto g = common.load();
            auto cfg = dflags.config();
            cfg.record_timing = wall_clock;
            auto report = diffusion_cluster(g, g.vertex_of(seed_label), cfg);
            emit(out_path, [&](std::ostream& os) { write_json(os, cluster_report_json(g, report, wall_clock)); });
            if (!telemetry_path.empty()) {
                emit(telemetry_path, [&](std::ostream& os) { write_iteration_csv(os, report, wall_clock); });
            }
        } else if (*walk) {
            auto g = common.load();
            auto cfg = WalkConfig::defaults(expected_size);
            if (!schedule_text.empty()) cfg.f_schedule = parse_schedule(schedule_text);
            cfg.alpha = walk_alpha;
            cfg.beta = walk_beta;
            cfg.rng_seed = walk_rng;
            cfg.seed_degree_background = literal_init;
            auto report = walk_cluster(g, g.vertex_of(seed_label), cfg);
            emit(out_path, [&](std::ostream& os) { write_json(os, cluster_report_json(g, report)); });
        } else if (*partition) {
            auto g = common.load();
            auto result = partition_graph(g, dflags.config());
            emit(out_path, [&](std::ostream& os) { write_partition_csv(os, g, result.partition); });
            if (!json_path.empty()) {
                emit(json_path, [&](std::ostream& os) { write_json(os, partition_json(g, result)); });
            }
            std::cerr << "blocks " << result.partition.block_count << " modularity "
                      << format_double(modularity(g, result.partition)) << '\n';
        } else if (*overlap) {
            auto g = common.load();
            ocfg.affinity = !raw_embedding;
            std::vector<Vertex> centers;
            if (centers_text.rfind("auto:", 0) == 0) {
                auto count = parse_size(centers_text.substr(5), "centre count");
                DiffusionConfig pcfg;
                centers = auto_centers(g, count, pcfg);
            } else {
                for (const auto& label : split(centers_text, ',')) centers.push_back(g.vertex_of(label));
            }
            auto result = run_overlap(g, centers, ocfg);
            emit(out_path, [&](std::ostream& os) { write_json(os, overlap_json(g, result, ocfg.threshold)); });
            if (!memberships_path.empty()) {
                emit(memberships_path, [&](std::ostream& os) { write_memberships_csv(os, g, result.membership); });
            }
        } else if (*eval) {
            auto g = common.load();
            std::ifstream in(partition_path);
            if (!in) throw std::runtime_error("cannot open '" + partition_path + "'");
            auto p = read_partition_csv(in, g);
            std::cout << "modularity " << format_double(modularity(g, p)) << '\n';
            std::cout << "blocks " << p.block_count << '\n';
            auto blocks = p.blocks();
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                std::cout << "block " << b << " size " << blocks[b].size() << " conductance ";
                if (blocks.size() > 1) {
                    std::cout << format_double(conductance(g, blocks[b]));
                } else {
                    std::cout << "undefined";
                }
                std::cout << '\n';
            }
        } else if (*bench) {
            auto g = common.load();
            BenchSpec spec;
            spec.alphas.clear();
            for (const auto& a : split(alphas_text, ',')) spec.alphas.push_back(parse_double(a, "alpha"));
            if (seeds_text.empty()) {
                spec.seeds = top_degree(g, num_seeds);
            } else {
                for (const auto& label : split(seeds_text, ',')) spec.seeds.push_back(g.vertex_of(label));
            }
            spec.max_iterations = dflags.max_iters;
            spec.convergence_epsilon = dflags.eps;
            spec.kernel = parse_kernel(dflags.kernel);
            spec.wall_clock = wall_clock;
            spec.with_partition = with_partition;
            auto report = run_benchmark(g, spec);
            emit(telemetry_path, [&](std::ostream& os) { write_time_csv(os, g, report, wall_clock); });
            if (!convergence_path.empty()) {
                emit(convergence_path, [&](std::ostream& os) { write_convergence_csv(os, g, report); });
            }
            if (!clusters_path.empty()) {
                Json doc;
                doc["schema"] = "lgc.bench_clusters/1";
                Json runs = Json::array();
                for (const auto& run : report.runs) {
                    runs.push_back(Json{{"alpha", run.alpha}, {"cluster", cluster_report_json(g, run.report, wall_clock)}});
                }
                doc["runs"] = std::move(runs);
                emit(clusters_path, [&](std::ostream& os) { write_json(os, doc); });
            }
            emit(out_path, [&](std::ostream& os) { write_json(os, bench_summary_json(g, report)); });
        } else if (*generate) {
            Graph g;
            if (kind == "two-cliques") {
                g = synthetic::two_cliques_bridge(gen_size);
            } else if (kind == "ring") {
                g = synthetic::ring_of_cliques(gen_count, gen_size);
            } else if (kind == "planted") {
                g = synthetic::planted_partition(gen_count, gen_size, p_in, p_out, gen_seed);
            } else if (kind == "gnp") {
                g = synthetic::gnp(gen_count, p_in, gen_seed);
            } else {
                throw std::invalid_argument("unknown graph kind '" + kind + "'");
            }
            emit(out_path, [&](std::ostream& os) { write_edge_list(os, g); });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
