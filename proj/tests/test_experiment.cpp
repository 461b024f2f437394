#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lgc/experiment.hpp"
#include "lgc/generators.hpp"
#include "lgc/report_json.hpp"
#include "oracles.hpp"

using namespace lgc;

namespace {

Graph karate() { return load_edge_list_file(LGC_DATA_DIR "/karate.edges").graph; }

}  // namespace

TEST(PartitionGraph, DisjointTriangles) {
    std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    auto g = Graph::from_edges(6, edges);
    auto result = partition_graph(g, {.alpha = 1e-3});
    ASSERT_EQ(result.partition.block_count, 2u);
    auto blocks = result.partition.blocks();
    EXPECT_EQ(blocks[0], (std::vector<Vertex>{0, 1, 2}));
    EXPECT_EQ(blocks[1], (std::vector<Vertex>{3, 4, 5}));
}

TEST(PartitionGraph, TwoCliquesBridge) {
    auto g = synthetic::two_cliques_bridge(5);
    auto result = partition_graph(g, {.alpha = 1e-2});
    ASSERT_EQ(result.partition.block_count, 2u);
    auto blocks = result.partition.blocks();
    EXPECT_EQ(blocks[0], (std::vector<Vertex>{0, 1, 2, 3, 4}));
    EXPECT_EQ(blocks[1], (std::vector<Vertex>{5, 6, 7, 8, 9}));
    EXPECT_DOUBLE_EQ(modularity(g, result.partition), 2.0 * (10.0 / 21.0 - (21.0 / 42.0) * (21.0 / 42.0)));
    // Highest degree first, lowest index on ties: the bridge end 4 seeds first.
    EXPECT_EQ(result.blocks[0].seed, 4u);
}

TEST(PartitionGraph, IsolatedVerticesBecomeSingletons) {
    std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {1, 2}, {2, 0}};
    auto g = Graph::from_edges(5, edges);
    auto result = partition_graph(g, {.alpha = 1e-3});
    EXPECT_NO_THROW(result.partition.validate(5));
    auto blocks = result.partition.blocks();
    EXPECT_EQ(blocks[result.partition.block_of[3]], std::vector<Vertex>{3});
    EXPECT_EQ(blocks[result.partition.block_of[4]], std::vector<Vertex>{4});
    EXPECT_TRUE(result.blocks[result.partition.block_of[3]].degenerate);
}

TEST(PartitionGraph, AlwaysValidPartition) {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = trial % 2 ? oracle::random_connected(rng, 2, 60).build()
                           : synthetic::planted_partition(4, 12, 0.5, 0.03, rng());
        auto result = partition_graph(g, {.alpha = trial % 3 ? 1e-3 : 1e-2});
        EXPECT_NO_THROW(result.partition.validate(g.vertex_count()));
        ASSERT_EQ(result.blocks.size(), result.partition.block_count);
        auto blocks = result.partition.blocks();
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            EXPECT_FALSE(blocks[b].empty());
            EXPECT_EQ(blocks[b].size(), result.blocks[b].size);
        }
    }
}

TEST(PartitionGraph, KarateAlphaSweep) {
    auto g = karate();
    double best = -1.0;
    for (double alpha : {1e-2, 1e-3, 1e-4, 1e-5}) {
        best = std::max(best, modularity(g, partition_graph(g, {.alpha = alpha}).partition));
    }
    EXPECT_GE(best, 0.37);
}

TEST(Overlap, AutoCentresAreBlockSeeds) {
    auto g = synthetic::ring_of_cliques(4, 5);
    auto centers = auto_centers(g, 3, {.alpha = 1e-2});
    ASSERT_EQ(centers.size(), 3u);
    auto parts = partition_graph(g, {.alpha = 1e-2});
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(centers[i], parts.blocks[i].seed);
    EXPECT_THROW(auto_centers(g, 40, {.alpha = 1e-2}), std::invalid_argument);
}

TEST(Overlap, PipelineShapes) {
    auto g = karate();
    std::vector<Vertex> centers{g.vertex_of("1"), g.vertex_of("34")};
    auto result = run_overlap(g, centers, {});
    EXPECT_EQ(result.embedding.values.rows(), 34u);
    EXPECT_EQ(result.features.cols(), 2u);
    EXPECT_EQ(result.membership.memberships.cols(), 3u);
    EXPECT_EQ(result.clusters.size(), 3u);
    std::vector<int> covered(34, 0);
    for (const auto& c : result.clusters) {
        for (Vertex v : c) covered[v] = 1;
    }
    EXPECT_EQ(std::count(covered.begin(), covered.end(), 1), 34);
}

TEST(Benchmark, WorkBoundedBySupportVolume) {
    auto g = synthetic::ring_of_cliques(2000, 6);
    BenchSpec spec;
    spec.seeds = {0, 600, 6000};
    spec.alphas = {1e-3, 1e-5};
    spec.max_iterations = 200;
    auto report = run_benchmark(g, spec);
    ASSERT_EQ(report.runs.size(), 6u);
    for (const auto& run : report.runs) {
        for (const auto& rec : run.report.iteration_log) {
            EXPECT_LE(rec.work, 4 * std::max<std::uint64_t>(rec.input_volume, 1));
            EXPECT_LE(rec.work, 4 * std::max<std::uint64_t>(rec.support_volume, 1));
            EXPECT_LT(rec.support_size, g.vertex_count());
        }
    }
    // Fixed alpha-major, seed-minor order.
    EXPECT_EQ(report.runs[1].report.seed, 600u);
    EXPECT_EQ(report.runs[3].alpha, 1e-5);
}

TEST(Benchmark, CsvOutputIsDeterministic) {
    auto g = karate();
    BenchSpec spec;
    spec.seeds = {0, 5, 33};
    spec.with_partition = true;
    auto a = run_benchmark(g, spec);
    auto b = run_benchmark(g, spec);
    std::ostringstream ta, tb, ca, cb, ja, jb;
    write_time_csv(ta, g, a, false);
    write_time_csv(tb, g, b, false);
    write_convergence_csv(ca, g, a);
    write_convergence_csv(cb, g, b);
    write_json(ja, bench_summary_json(g, a));
    write_json(jb, bench_summary_json(g, b));
    EXPECT_EQ(ta.str(), tb.str());
    EXPECT_EQ(ca.str(), cb.str());
    EXPECT_EQ(ja.str(), jb.str());
    EXPECT_EQ(ta.str().substr(0, ta.str().find('\n')), "alpha,seed,iteration,support_size,support_volume,work");
    EXPECT_EQ(a.partition_modularity.size(), spec.alphas.size());
}

TEST(Benchmark, ConvergenceTailVanishes) {
    auto g = karate();
    auto report = diffusion_cluster(g, g.vertex_of("1"), {.alpha = 1e-5});
    ASSERT_TRUE(report.converged);
    std::ostringstream out;
    write_iteration_csv(out, report, false);
    std::istringstream in(out.str());
    std::string line, last;
    while (std::getline(in, line)) last = line;
    // iteration,support_size,support_volume,work,l1_change,seed_mass
    std::vector<std::string> cells;
    std::stringstream row(last);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 6u);
    EXPECT_LT(std::stod(cells[4]), 1e-9);
}

TEST(ReportJson, ClusterSchema) {
    auto g = synthetic::two_cliques_bridge(5);
    auto report = diffusion_cluster(g, 0, {.alpha = 1e-2});
    auto doc = cluster_report_json(g, report);
    EXPECT_EQ(doc["schema"], kClusterSchema);
    EXPECT_EQ(doc["seed"], "0");
    EXPECT_EQ(doc["members"].size(), 5u);
    EXPECT_EQ(doc["members"][0]["belongingness"], 1.0);
    EXPECT_EQ(doc["iterations"], report.iterations);
    EXPECT_EQ(doc["telemetry"].size(), report.iterations);
    EXPECT_FALSE(doc["telemetry"][0].contains("seconds"));
    EXPECT_FALSE(doc.contains("phases"));
    auto timed = cluster_report_json(g, report, true);
    EXPECT_TRUE(timed["telemetry"][0].contains("seconds"));
}

TEST(ReportJson, PartitionAndOverlap) {
    auto g = synthetic::two_cliques_bridge(5);
    auto parts = partition_graph(g, {.alpha = 1e-2});
    auto pj = partition_json(g, parts);
    EXPECT_EQ(pj["schema"], kPartitionSchema);
    EXPECT_EQ(pj["blocks"].size(), 2u);
    EXPECT_EQ(pj["blocks"][0]["members"].size(), 5u);

    std::vector<Vertex> centers{0, 9};
    OverlapConfig cfg;
    cfg.fcm.k = 2;
    auto ov = run_overlap(g, centers, cfg);
    auto oj = overlap_json(g, ov, cfg.threshold);
    EXPECT_EQ(oj["schema"], kOverlapSchema);
    EXPECT_EQ(oj["clusters"].size(), 2u);
}
