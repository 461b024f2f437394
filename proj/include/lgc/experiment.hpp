#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lgc/cluster_report.hpp"
#include "lgc/diffusion.hpp"
#include "lgc/fcm.hpp"
#include "lgc/graph.hpp"
#include "lgc/quality.hpp"

namespace lgc {

struct BlockSummary {
    Vertex seed;
    std::size_t size;         ///< final size, after contested vertices moved
    double cluster_conductance;
    bool degenerate;
};

struct PartitionResult {
    Partition partition;
    std::vector<BlockSummary> blocks;  ///< indexed by block id
};

/// Covers the graph with local clusters. Each round seeds a diffusion at the
/// highest-degree uncovered vertex (lowest index on ties) and opens a block for
/// its cluster; a vertex already covered moves only if its belongingness in the
/// new cluster is strictly higher. Isolated vertices become singleton blocks.
/// Blocks emptied by later rounds are dropped and ids renumbered in creation order.
PartitionResult partition_graph(const Graph& g, const DiffusionConfig& cfg);

struct OverlapConfig {
    DiffusionConfig diffusion{.alpha = 0.025};
    FcmConfig fcm{.k = 3, .restarts = 8};
    /// Cluster the row-normalised embedding (relative affinity to the centres).
    bool affinity = true;
    double threshold = 0.3;
};

struct OverlapResult {
    EmbeddingMatrix embedding;
    DenseMatrix features;
    MembershipMatrix membership;
    std::vector<std::vector<Vertex>> clusters;
};

OverlapResult run_overlap(const Graph& g, std::span<const Vertex> centers, const OverlapConfig& cfg);

/// Seeds of the first `count` blocks of partition_graph(g, cfg): hubs of
/// non-overlapping clusters, in decreasing seed degree.
std::vector<Vertex> auto_centers(const Graph& g, std::size_t count, const DiffusionConfig& cfg);

struct BenchSpec {
    std::vector<Vertex> seeds;
    std::vector<double> alphas{1e-3, 1e-5, 1e-6, 1e-7};
    std::size_t max_iterations = 1000;
    double convergence_epsilon = 1e-9;
    StepKernel kernel = StepKernel::serial;
    bool wall_clock = false;
    bool with_partition = false;
};

struct BenchRun {
    double alpha;
    ClusterReport report;
    /// Modularity of {cluster, rest}.
    double cluster_modularity;
};

struct BenchReport {
    std::vector<BenchRun> runs;  ///< alpha-major, then seed order
    /// (alpha, modularity) when with_partition is set
    std::vector<std::pair<double, double>> partition_modularity;
};

/// Runs every (alpha, seed) pair; independent runs execute concurrently and are
/// collected in a fixed order.
BenchReport run_benchmark(const Graph& g, const BenchSpec& spec);

/// alpha,seed,iteration,support_size,support_volume,work[,seconds]
void write_time_csv(std::ostream& out, const Graph& g, const BenchReport& report, bool wall_clock);
/// alpha,seed,iteration,l1_change,seed_mass
void write_convergence_csv(std::ostream& out, const Graph& g, const BenchReport& report);
/// Same columns as the two above, for a single cluster run.
void write_iteration_csv(std::ostream& out, const ClusterReport& report, bool wall_clock);

}  // namespace lgc
