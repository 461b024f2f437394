#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lgc/cluster_report.hpp"
#include "lgc/graph.hpp"

namespace lgc {

/// Sparse probability mass over vertices, anchored at a seed.
///
/// Entries are kept sorted by vertex and strictly positive. The seed entry may
/// only be absent for a default-constructed value.
class SparseMass {
public:
    SparseMass() = default;
    /// All mass on `seed`.
    explicit SparseMass(Vertex seed);
    /// Takes entries as given; sorts them, rejects duplicates and non-positive values.
    SparseMass(Vertex seed, std::vector<std::pair<Vertex, double>> entries);

    Vertex seed() const noexcept { return seed_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }
    std::span<const Vertex> support() const noexcept { return vertices_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Zero for vertices outside the support.
    double mass(Vertex v) const;
    double seed_mass() const { return mass(seed_); }
    double total() const;
    std::uint64_t volume(const Graph& g) const;
    std::size_t bytes() const noexcept {
        return vertices_.capacity() * sizeof(Vertex) + values_.capacity() * sizeof(double);
    }

    /// Adopts parallel arrays that are already sorted, unique and positive.
    static SparseMass from_sorted(Vertex seed, std::vector<Vertex> vertices, std::vector<double> values);

    friend bool operator==(const SparseMass&, const SparseMass&) = default;

private:
    Vertex seed_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<double> values_;
};

/// L1 distance between two sparse vectors (merge over the union of supports).
double l1_distance(const SparseMass& a, const SparseMass& b);

enum class StepKernel {
    serial,    ///< push from each support vertex; work bounded by support volume
    parallel,  ///< OpenMP pull over support and its frontier; bit-identical result
};

/// Dense scratch reused across steps. Sized to the graph once; only touched
/// slots are reset, so per-step cost stays proportional to the support.
struct DiffusionWorkspace {
    explicit DiffusionWorkspace(std::size_t vertex_count)
        : dense(vertex_count, 0.0), mark(vertex_count, 0) {}
    std::size_t bytes() const noexcept {
        return dense.capacity() * sizeof(double) + mark.capacity() + touched.capacity() * sizeof(Vertex);
    }

    std::vector<double> dense;
    std::vector<char> mark;
    std::vector<Vertex> touched;
};

namespace kernels {
/// Serial reference: scatter from each support vertex in ascending order.
SparseMass diffuse_push(const Graph& g, const SparseMass& mass, DiffusionWorkspace& ws, std::uint64_t* work);
/// OpenMP gather over support plus frontier. Each entry sums the same terms in
/// the same order as diffuse_push, so the two agree bit for bit.
SparseMass diffuse_pull_omp(const Graph& g, const SparseMass& mass, DiffusionWorkspace& ws, std::uint64_t* work);
}  // namespace kernels

/// One application of the lazy walk: new[u] = old[u]/2 + sum_{w~u} old[w]/(2 d_w).
/// Throws GraphError if a support vertex is isolated. When `work` is non-null the
/// number of elementary updates performed is added to it.
SparseMass diffuse_step(const Graph& g, const SparseMass& mass, DiffusionWorkspace& ws,
                        StepKernel kernel = StepKernel::serial, std::uint64_t* work = nullptr);
SparseMass diffuse_step(const Graph& g, const SparseMass& mass);

/// Zeroes every non-seed entry below alpha * mass[seed] and returns the removed
/// mass to the seed. The threshold is re-evaluated as the seed grows, so on return
/// every surviving entry satisfies mass[u] >= alpha * mass[seed]. alpha = 0 is a no-op.
SparseMass truncate(const SparseMass& mass, double alpha, std::uint64_t* work = nullptr);

struct DiffusionConfig {
    double alpha = 1e-5;
    std::size_t max_iterations = 1000;
    double convergence_epsilon = 1e-9;
    StepKernel kernel = StepKernel::serial;
    bool record_timing = false;

    /// Throws std::invalid_argument. alpha = 0 is accepted and disables truncation.
    void validate() const;
};

struct DiffusionResult {
    SparseMass mass;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<IterationRecord> log;
};

/// Alternates diffuse_step and truncate from a unit mass on `seed` until the L1
/// change between consecutive truncated distributions drops below epsilon, or
/// max_iterations is hit (reported through `converged`, not an exception).
DiffusionResult run_diffusion(const Graph& g, Vertex seed, const DiffusionConfig& cfg);

/// Degree-normalised sweep over the support: seed first, then mass/degree
/// descending, ties by vertex index. Returns the minimum-conductance prefix.
ClusterReport extract_cluster(const Graph& g, const SparseMass& mass);

/// run_diffusion followed by extract_cluster, with telemetry carried over.
ClusterReport diffusion_cluster(const Graph& g, Vertex seed, const DiffusionConfig& cfg);

}  // namespace lgc
