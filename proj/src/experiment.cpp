#include "lgc/experiment.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "lgc/text_format.hpp"

namespace lgc {

PartitionResult partition_graph(const Graph& g, const DiffusionConfig& cfg) {
    cfg.validate();
    const auto n = g.vertex_count();
    constexpr auto none = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> owner(n, none);
    std::vector<double> owner_score(n, 0.0);
    std::vector<BlockSummary> opened;

    // Highest degree first, lowest index on ties.
    std::vector<Vertex> by_degree(n);
    for (Vertex v = 0; v < n; ++v) by_degree[v] = v;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });

    std::size_t covered = 0;
    auto assign = [&](Vertex v, std::uint32_t block, double score) {
        if (owner[v] == none) ++covered;
        owner[v] = block;
        owner_score[v] = score;
    };

    for (Vertex seed : by_degree) {
        if (covered == n) break;
        if (owner[seed] != none) continue;
        auto block = static_cast<std::uint32_t>(opened.size());
        if (g.degree(seed) == 0) {
            opened.push_back({seed, 1, 1.0, true});
            assign(seed, block, 1.0);
            continue;
        }
        auto report = diffusion_cluster(g, seed, cfg);
        opened.push_back({seed, 0, report.conductance, report.degenerate});
        for (const auto& member : report.members) {
            if (member.vertex == seed || owner[member.vertex] == none ||
                member.belongingness > owner_score[member.vertex]) {
                assign(member.vertex, block, member.belongingness);
            }
        }
    }

    std::vector<std::size_t> sizes(opened.size(), 0);
    for (auto b : owner) ++sizes[b];
    std::vector<std::uint32_t> renumber(opened.size(), none);
    PartitionResult result;
    for (std::size_t b = 0; b < opened.size(); ++b) {
        if (sizes[b] == 0) continue;
        renumber[b] = static_cast<std::uint32_t>(result.blocks.size());
        auto summary = opened[b];
        summary.size = sizes[b];
        result.blocks.push_back(summary);
    }
    result.partition.block_of.resize(n);
    for (Vertex v = 0; v < n; ++v) result.partition.block_of[v] = renumber[owner[v]];
    result.partition.block_count = static_cast<std::uint32_t>(result.blocks.size());
    return result;
}

OverlapResult run_overlap(const Graph& g, std::span<const Vertex> centers, const OverlapConfig& cfg) {
    OverlapResult out;
    out.embedding = build_embedding(g, centers, cfg.diffusion);
    out.features = cfg.affinity ? affinity_rows(out.embedding.values) : out.embedding.values;
    out.membership = fcm_fit(out.features, cfg.fcm);
    out.clusters = overlap_report(out.membership, cfg.threshold);
    return out;
}

std::vector<Vertex> auto_centers(const Graph& g, std::size_t count, const DiffusionConfig& cfg) {
    auto parts = partition_graph(g, cfg);
    std::vector<Vertex> centers;
    for (const auto& block : parts.blocks) {
        if (centers.size() == count) break;
        if (g.degree(block.seed) > 0) centers.push_back(block.seed);
    }
    if (centers.size() < count) {
        throw std::invalid_argument("partition produced only " + std::to_string(centers.size()) +
                                    " usable centres");
    }
    return centers;
}

namespace {

double two_block_modularity(const Graph& g, const ClusterReport& report) {
    auto members = report.member_set();
    if (members.size() == g.vertex_count()) return 0.0;
    Partition p;
    p.block_of.assign(g.vertex_count(), 1);
    for (Vertex v : members) p.block_of[v] = 0;
    p.block_count = 2;
    return modularity(g, p);
}

}  // namespace

BenchReport run_benchmark(const Graph& g, const BenchSpec& spec) {
    if (spec.seeds.empty()) throw std::invalid_argument("benchmark needs at least one seed");
    if (spec.alphas.empty()) throw std::invalid_argument("benchmark needs at least one alpha");
    for (Vertex s : spec.seeds) check_vertex(g, s);

    const auto jobs = spec.alphas.size() * spec.seeds.size();
    BenchReport report;
    report.runs.resize(jobs, BenchRun{0.0, {}, 0.0});
    const auto count = static_cast<std::ptrdiff_t>(jobs);
    // Timings of concurrent runs interfere; measure serially when they are requested.
#pragma omp parallel for schedule(dynamic, 1) if (!spec.wall_clock)
    for (std::ptrdiff_t job = 0; job < count; ++job) {
        auto idx = static_cast<std::size_t>(job);
        DiffusionConfig cfg;
        cfg.alpha = spec.alphas[idx / spec.seeds.size()];
        cfg.max_iterations = spec.max_iterations;
        cfg.convergence_epsilon = spec.convergence_epsilon;
        cfg.kernel = spec.kernel;
        cfg.record_timing = spec.wall_clock;
        auto cluster = diffusion_cluster(g, spec.seeds[idx % spec.seeds.size()], cfg);
        double q = two_block_modularity(g, cluster);
        report.runs[idx] = BenchRun{cfg.alpha, std::move(cluster), q};
    }

    if (spec.with_partition) {
        for (double alpha : spec.alphas) {
            DiffusionConfig cfg;
            cfg.alpha = alpha;
            cfg.max_iterations = spec.max_iterations;
            cfg.convergence_epsilon = spec.convergence_epsilon;
            auto parts = partition_graph(g, cfg);
            report.partition_modularity.emplace_back(alpha, modularity(g, parts.partition));
        }
    }
    return report;
}

namespace {

void time_rows(std::ostream& out, const Graph& g, double alpha, const ClusterReport& r, bool wall_clock) {
    for (const auto& rec : r.iteration_log) {
        out << format_double(alpha) << ',' << g.label(r.seed) << ',' << rec.iteration << ',' << rec.support_size
            << ',' << rec.support_volume << ',' << rec.work;
        if (wall_clock) out << ',' << format_double(rec.seconds);
        out << '\n';
    }
}

void convergence_rows(std::ostream& out, const Graph& g, double alpha, const ClusterReport& r) {
    for (const auto& rec : r.iteration_log) {
        out << format_double(alpha) << ',' << g.label(r.seed) << ',' << rec.iteration << ','
            << format_double(rec.l1_change) << ',' << format_double(rec.seed_mass) << '\n';
    }
}

constexpr const char* kTimeHeader = "alpha,seed,iteration,support_size,support_volume,work";
constexpr const char* kConvergenceHeader = "alpha,seed,iteration,l1_change,seed_mass";

}  // namespace

void write_time_csv(std::ostream& out, const Graph& g, const BenchReport& report, bool wall_clock) {
    out << kTimeHeader << (wall_clock ? ",seconds\n" : "\n");
    for (const auto& run : report.runs) time_rows(out, g, run.alpha, run.report, wall_clock);
}

void write_convergence_csv(std::ostream& out, const Graph& g, const BenchReport& report) {
    out << kConvergenceHeader << '\n';
    for (const auto& run : report.runs) convergence_rows(out, g, run.alpha, run.report);
}

void write_iteration_csv(std::ostream& out, const ClusterReport& report, bool wall_clock) {
    out << "iteration,support_size,support_volume,work,l1_change,seed_mass" << (wall_clock ? ",seconds\n" : "\n");
    for (const auto& rec : report.iteration_log) {
        out << rec.iteration << ',' << rec.support_size << ',' << rec.support_volume << ',' << rec.work << ','
            << format_double(rec.l1_change) << ',' << format_double(rec.seed_mass);
        if (wall_clock) out << ',' << format_double(rec.seconds);
        out << '\n';
    }
}

}  // namespace lgc
