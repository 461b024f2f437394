#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "lgc/graph.hpp"

namespace lgc {

/// Disjoint cover of V by nonempty blocks 0..block_count-1.
struct Partition {
    std::vector<std::uint32_t> block_of;
    std::uint32_t block_count = 0;

    /// Builds from explicit blocks; throws if they overlap or miss a vertex.
    static Partition from_blocks(std::size_t vertex_count,
                                 const std::vector<std::vector<Vertex>>& blocks);
    std::vector<std::vector<Vertex>> blocks() const;
    /// Throws std::invalid_argument on empty blocks or out-of-range ids.
    void validate(std::size_t vertex_count) const;
};

/// |E(S, V-S)| / min(vol S, vol V-S). Duplicates in `set` are ignored.
/// Throws std::invalid_argument if either side has zero volume.
double conductance(const Graph& g, std::span<const Vertex> set);

/// Cut size of S (edges leaving it).
std::uint64_t cut_size(const Graph& g, std::span<const Vertex> set);

struct SweepResult {
    /// Length of the winning prefix; 0 if no admissible prefix exists.
    std::size_t best_prefix = 0;
    double best_conductance = std::numeric_limits<double>::infinity();
    /// Conductance of every prefix length 1..order.size(); NaN where undefined.
    std::vector<double> prefix_conductance;
};

/// Evaluates every prefix of `order` incrementally and picks the smallest
/// conductance among prefixes of length >= min_prefix (first wins on ties).
/// Prefixes whose complement has zero volume are skipped. Work is
/// O(vol(order) log |order|); no O(n) state is allocated.
SweepResult sweep_cut(const Graph& g, std::span<const Vertex> order, std::size_t min_prefix = 1);

struct BruteForceCut {
    std::vector<Vertex> set;  ///< smaller-volume side, sorted
    double conductance = 0.0;
};

constexpr std::size_t kBruteForceMaxVertices = 20;

/// Exhaustive minimum conductance over all 2^n subsets, compared exactly in
/// integer arithmetic. Refuses graphs with more than kBruteForceMaxVertices vertices.
BruteForceCut min_conductance_bruteforce(const Graph& g);

/// Newman modularity Q = sum_S [ m_S/m - (vol S / 2m)^2 ]. Zero for an edgeless graph.
double modularity(const Graph& g, const Partition& p);

/// CSV with header `vertex,block`, one row per vertex in index order.
void write_partition_csv(std::ostream& out, const Graph& g, const Partition& p);
/// Reads `vertex,block` rows (header optional). Block ids are relabelled densely
/// in order of first appearance. Every vertex must appear exactly once.
Partition read_partition_csv(std::istream& in, const Graph& g);

}  // namespace lgc
