#include "lgc/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace lgc::synthetic {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

namespace {

void add_clique(EdgeList& edges, Vertex first, std::size_t q) {
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a + 1; b < q; ++b) {
            edges.emplace_back(first + static_cast<Vertex>(a), first + static_cast<Vertex>(b));
        }
    }
}

// Geometric skipping over the n(n-1)/2 (or block-pair) slots keeps sparse sampling linear in edges.
template <typename Emit>
void sample_pairs(std::uint64_t slots, double p, std::mt19937_64& rng, Emit emit) {
    if (p <= 0.0) return;
    if (p >= 1.0) {
        for (std::uint64_t s = 0; s < slots; ++s) emit(s);
        return;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_q = std::log1p(-p);
    std::uint64_t s = 0;
    while (true) {
        double r = unit(rng);
        auto skip = static_cast<std::uint64_t>(std::floor(std::log1p(-r) / log_q));
        s += skip;
        if (s >= slots) break;
        emit(s);
        ++s;
    }
}

std::pair<Vertex, Vertex> triangle_slot(std::uint64_t s) {
    // slot s enumerates pairs (i, j) with j < i in row-major order
    auto i = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(s))) / 2.0);
    while (i * (i - 1) / 2 > s) --i;
    while ((i + 1) * i / 2 <= s) ++i;
    auto j = s - i * (i - 1) / 2;
    return {static_cast<Vertex>(i), static_cast<Vertex>(j)};
}

}  // namespace

Graph two_cliques_bridge(std::size_t q) {
    if (q < 2) throw std::invalid_argument("clique size must be at least 2");
    EdgeList edges;
    add_clique(edges, 0, q);
    add_clique(edges, static_cast<Vertex>(q), q);
    edges.emplace_back(static_cast<Vertex>(q - 1), static_cast<Vertex>(q));
    return Graph::from_edges(2 * q, edges);
}

Graph ring_of_cliques(std::size_t count, std::size_t q) {
    if (count < 3 || q < 2) throw std::invalid_argument("ring needs >= 3 cliques of size >= 2");
    EdgeList edges;
    for (std::size_t c = 0; c < count; ++c) {
        auto first = static_cast<Vertex>(c * q);
        add_clique(edges, first, q);
        auto next = static_cast<Vertex>(((c + 1) % count) * q);
        edges.emplace_back(first + static_cast<Vertex>(q - 1), next);
    }
    return Graph::from_edges(count * q, edges);
}

Graph random_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("need at least two vertices");
    std::mt19937_64 rng(seed);
    EdgeList edges;
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> parent(0, v - 1);
        edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(parent(rng)));
    }
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    for (std::size_t e = 0; e < extra_edges; ++e) {
        edges.emplace_back(static_cast<Vertex>(any(rng)), static_cast<Vertex>(any(rng)));
    }
    return Graph::from_edges(n, edges);
}

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EdgeList edges;
    auto slots = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    sample_pairs(slots, p, rng, [&](std::uint64_t s) { edges.push_back(triangle_slot(s)); });
    return Graph::from_edges(n, edges);
}

Graph planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EdgeList edges;
    const auto n = blocks * block_size;
    auto intra_slots = static_cast<std::uint64_t>(block_size) * (block_size - 1) / 2;
    for (std::size_t b = 0; b < blocks; ++b) {
        auto base = static_cast<Vertex>(b * block_size);
        sample_pairs(intra_slots, p_in, rng, [&](std::uint64_t s) {
            auto [i, j] = triangle_slot(s);
            edges.emplace_back(base + i, base + j);
        });
    }
    // Inter-block edges: sample over all pairs and keep the cross-block ones.
    auto all_slots = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    sample_pairs(all_slots, p_out, rng, [&](std::uint64_t s) {
        auto [i, j] = triangle_slot(s);
        if (i / block_size != j / block_size) edges.emplace_back(i, j);
    });
    return Graph::from_edges(n, edges);
}

}  // namespace lgc::synthetic
