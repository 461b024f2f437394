#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lgc/graph.hpp"

namespace lgc {

struct MemberScore {
    Vertex vertex;
    double belongingness;  ///< score relative to the seed; the seed itself scores 1
};

/// Per-iteration diffusion telemetry. `work` counts elementary mass updates and
/// comparisons; `seconds` is wall time and is excluded from deterministic output.
struct IterationRecord {
    std::size_t iteration = 0;
    double l1_change = 0.0;
    std::size_t support_size = 0;
    std::uint64_t support_volume = 0;
    /// Volume of the distribution the step started from (what the step had to read).
    std::uint64_t input_volume = 0;
    std::uint64_t work = 0;
    /// Heap bytes held by the distribution after the iteration.
    std::size_t mass_bytes = 0;
    double seed_mass = 0.0;
    double seconds = 0.0;
};

struct PhaseRecord {
    double f = 1.0;
    std::size_t steps = 0;
    std::size_t accepted = 0;
    /// (vertex, landings during this phase), sorted by vertex
    std::vector<std::pair<Vertex, std::uint64_t>> visits;
};

/// A cluster grown around one seed together with the run that produced it.
struct ClusterReport {
    Vertex seed = 0;
    /// Members in sweep order; the seed always has belongingness 1.
    std::vector<MemberScore> members;
    double conductance = 1.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Diffusion: the support carried the volume of the entire graph.
    /// Walk: the walker never left the seed, so the cluster is the bare seed.
    bool degenerate = false;
    std::vector<IterationRecord> iteration_log;
    std::vector<PhaseRecord> phase_log;

    std::vector<Vertex> member_set() const;  ///< sorted ascending
};

}  // namespace lgc
