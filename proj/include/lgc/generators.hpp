#pragma once

#include <cstdint>

#include "lgc/graph.hpp"

namespace lgc::synthetic {

/// Two K_q cliques on [0,q) and [q,2q) joined by the single edge (q-1, q).
Graph two_cliques_bridge(std::size_t q);

/// `count` cliques of size q arranged in a ring, consecutive cliques joined by one edge.
Graph ring_of_cliques(std::size_t count, std::size_t q);

/// Random spanning tree plus `extra_edges` uniform chords; always connected.
Graph random_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed);

/// Erdos-Renyi G(n, p); may be disconnected.
Graph gnp(std::size_t n, double p, std::uint64_t seed);

/// Planted partition: `blocks` groups of `block_size`, intra-group edge
/// probability p_in, inter-group p_out (sampled sparsely).
Graph planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out, std::uint64_t seed);

}  // namespace lgc::synthetic
