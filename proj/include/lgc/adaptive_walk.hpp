#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "lgc/cluster_report.hpp"
#include "lgc/graph.hpp"

namespace lgc {

struct WalkPhase {
    double f = 1.3;
    std::size_t steps = 0;
};

/// Background energy is alpha/d_w for every vertex (or alpha/d_seed with
/// `seed_degree_background`); the seed starts at beta/d_seed.
struct WalkConfig {
    double alpha = 1.0;
    double beta = 100.0;
    std::vector<WalkPhase> f_schedule;
    std::uint64_t rng_seed = 0;
    /// Use the seed's degree in every background energy instead of each vertex's own.
    bool seed_degree_background = false;

    /// Default schedule: 10x the expected cluster size at f = 1.3, then again at f = 2.
    static WalkConfig defaults(std::size_t expected_cluster_size);
    void validate() const;
};

/// Walk state: sparse per-vertex energies over an implicit background, the
/// current vertex, and how often each vertex has been occupied.
class EnergyTable {
public:
    EnergyTable(const Graph& g, Vertex seed, const WalkConfig& cfg);

    double energy(Vertex v) const;
    double background(Vertex v) const;
    Vertex seed() const noexcept { return seed_; }
    Vertex current() const noexcept { return current_; }
    double f() const noexcept { return f_; }
    std::uint64_t visits(Vertex v) const;
    std::uint64_t total_visits() const noexcept { return total_visits_; }
    std::uint64_t steps() const noexcept { return steps_; }

    /// Vertices with at least one visit, ascending.
    std::vector<Vertex> visited() const;

    void set_f(double f);
    /// Moves the walker back to the seed without recording a visit.
    void reset_to_seed() noexcept { current_ = seed_; }

private:
    friend struct WalkStepAccess;
    const Graph* graph_;
    Vertex seed_;
    Vertex current_;
    double f_ = 1.0;
    double alpha_;
    double seed_degree_;
    bool seed_degree_background_;
    std::unordered_map<Vertex, double> raised_;
    std::unordered_map<Vertex, std::uint64_t> visits_;
    std::uint64_t total_visits_ = 0;
    std::uint64_t steps_ = 0;
};

/// Every vertex at background energy, the seed at beta/d_seed, walker on the seed.
EnergyTable init_energies(const Graph& g, Vertex seed, const WalkConfig& cfg);

/// min{energy[to] / energy[from], 1}
double acceptance_probability(const EnergyTable& state, Vertex from, Vertex to);

struct StepOutcome {
    Vertex from;
    Vertex proposed;
    bool accepted;
    double acceptance;
};

using WalkRng = std::mt19937_64;

/// Proposes a uniform neighbour of the current vertex and accepts it with the
/// energy ratio; the vertex the step started on has its energy multiplied by f.
StepOutcome walk_step(const Graph& g, EnergyTable& state, WalkRng& rng);

struct WalkResult {
    EnergyTable state;
    std::vector<PhaseRecord> phases;
};

/// Runs every schedule phase in order, returning the walker to the seed at each
/// phase boundary.
WalkResult run_walk(const Graph& g, Vertex seed, const WalkConfig& cfg);

/// Orders visited vertices by final energy (descending, ties by index) and returns
/// the minimum-conductance prefix that contains the seed. A walk that never left
/// the seed yields the bare seed, flagged degenerate.
ClusterReport extract_cluster_from_energy(const Graph& g, const EnergyTable& state);

ClusterReport walk_cluster(const Graph& g, Vertex seed, const WalkConfig& cfg);

}  // namespace lgc
