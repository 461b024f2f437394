#include "lgc/quality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lgc {

Partition Partition::from_blocks(std::size_t vertex_count,
                                 const std::vector<std::vector<Vertex>>& blocks) {
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    Partition p;
    p.block_of.assign(vertex_count, unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw std::invalid_argument("empty block");
        for (Vertex v : blocks[b]) {
            if (v >= vertex_count) throw std::invalid_argument("block vertex out of range");
            if (p.block_of[v] != unset) throw std::invalid_argument("blocks overlap");
            p.block_of[v] = static_cast<std::uint32_t>(b);
        }
    }
    if (std::find(p.block_of.begin(), p.block_of.end(), unset) != p.block_of.end()) {
        throw std::invalid_argument("blocks do not cover every vertex");
    }
    p.block_count = static_cast<std::uint32_t>(blocks.size());
    return p;
}

std::vector<std::vector<Vertex>> Partition::blocks() const {
    std::vector<std::vector<Vertex>> out(block_count);
    for (std::size_t v = 0; v < block_of.size(); ++v) {
        out[block_of[v]].push_back(static_cast<Vertex>(v));
    }
    return out;
}

void Partition::validate(std::size_t vertex_count) const {
    if (block_of.size() != vertex_count) throw std::invalid_argument("partition size mismatch");
    std::vector<std::size_t> sizes(block_count, 0);
    for (auto b : block_of) {
        if (b >= block_count) throw std::invalid_argument("block id out of range");
        ++sizes[b];
    }
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) {
        throw std::invalid_argument("partition has an empty block");
    }
}

namespace {

struct CutVolume {
    std::uint64_t cut = 0;
    std::uint64_t volume = 0;
};

CutVolume cut_and_volume(const Graph& g, std::span<const Vertex> set) {
    std::vector<Vertex> members(set.begin(), set.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    CutVolume cv;
    for (Vertex u : members) {
        check_vertex(g, u);
        cv.volume += g.degree(u);
        for (Vertex w : g.neighbors(u)) {
            if (!std::binary_search(members.begin(), members.end(), w)) ++cv.cut;
        }
    }
    return cv;
}

}  // namespace

std::uint64_t cut_size(const Graph& g, std::span<const Vertex> set) {
    return cut_and_volume(g, set).cut;
}

double conductance(const Graph& g, std::span<const Vertex> set) {
    if (set.empty()) throw std::invalid_argument("conductance of the empty set is undefined");
    auto cv = cut_and_volume(g, set);
    auto denom = std::min(cv.volume, g.total_volume() - cv.volume);
    if (denom == 0) throw std::invalid_argument("conductance undefined: one side has zero volume");
    return static_cast<double>(cv.cut) / static_cast<double>(denom);
}

SweepResult sweep_cut(const Graph& g, std::span<const Vertex> order, std::size_t min_prefix) {
    SweepResult result;
    result.prefix_conductance.assign(order.size(), std::numeric_limits<double>::quiet_NaN());

    // Membership test over the order itself keeps the sweep local to the support.
    std::vector<std::pair<Vertex, std::size_t>> position;
    position.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) position.emplace_back(order[i], i);
    std::sort(position.begin(), position.end());
    auto rank_of = [&](Vertex v) -> std::size_t {
        auto it = std::lower_bound(position.begin(), position.end(), std::pair<Vertex, std::size_t>{v, 0});
        return (it != position.end() && it->first == v) ? it->second : order.size();
    };

    const auto total = g.total_volume();
    std::int64_t cut = 0;
    std::uint64_t volume = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex u = order[i];
        std::int64_t inside = 0;
        for (Vertex w : g.neighbors(u)) {
            if (rank_of(w) < i) ++inside;
        }
        cut += static_cast<std::int64_t>(g.degree(u)) - 2 * inside;
        volume += g.degree(u);
        auto denom = std::min(volume, total - volume);
        if (denom == 0) continue;
        double phi = static_cast<double>(cut) / static_cast<double>(denom);
        result.prefix_conductance[i] = phi;
        if (i + 1 >= min_prefix && phi < result.best_conductance) {
            result.best_conductance = phi;
            result.best_prefix = i + 1;
        }
    }
    return result;
}

BruteForceCut min_conductance_bruteforce(const Graph& g) {
    const auto n = g.vertex_count();
    if (n > kBruteForceMaxVertices) {
        throw std::invalid_argument("exhaustive conductance limited to " +
                                    std::to_string(kBruteForceMaxVertices) + " vertices");
    }
    if (n < 2 || g.edge_count() == 0) throw std::invalid_argument("graph has no proper cut");

    std::vector<std::uint32_t> adj_mask(n, 0);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w : g.neighbors(u)) adj_mask[u] |= 1u << w;
    }
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    const auto total = g.total_volume();

    std::uint64_t best_cut = 1, best_den = 0;  // 1/0 acts as +infinity
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        std::uint64_t cut = 0, volume = 0;
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
            auto u = static_cast<unsigned>(std::countr_zero(rest));
            volume += g.degree(u);
            cut += static_cast<unsigned>(std::popcount(adj_mask[u] & ~mask & full));
        }
        auto den = std::min(volume, total - volume);
        if (den == 0) continue;
        // cut/den < best_cut/best_den, exactly
        if (best_den == 0 || cut * best_den < best_cut * den) {
            best_cut = cut;
            best_den = den;
            best_mask = mask;
        }
    }
    if (best_den == 0) throw std::invalid_argument("graph has no proper cut");

    std::uint64_t volume = 0;
    for (Vertex u = 0; u < n; ++u) {
        if (best_mask >> u & 1u) volume += g.degree(u);
    }
    std::uint32_t side = best_mask;
    if (volume * 2 > total || (volume * 2 == total && (best_mask & 1u) == 0)) side = ~best_mask & full;

    BruteForceCut out;
    for (Vertex u = 0; u < n; ++u) {
        if (side >> u & 1u) out.set.push_back(u);
    }
    out.conductance = static_cast<double>(best_cut) / static_cast<double>(best_den);
    return out;
}

double modularity(const Graph& g, const Partition& p) {
    p.validate(g.vertex_count());
    if (g.edge_count() == 0) return 0.0;
    std::vector<std::uint64_t> internal(p.block_count, 0), volume(p.block_count, 0);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        auto b = p.block_of[u];
        volume[b] += g.degree(u);
        for (Vertex w : g.neighbors(u)) {
            if (u < w && p.block_of[w] == b) ++internal[b];
        }
    }
    const double m = static_cast<double>(g.edge_count());
    const double two_m = 2.0 * m;
    double q = 0.0;
    for (std::uint32_t b = 0; b < p.block_count; ++b) {
        double share = static_cast<double>(volume[b]) / two_m;
        q += static_cast<double>(internal[b]) / m - share * share;
    }
    return q;
}

void write_partition_csv(std::ostream& out, const Graph& g, const Partition& p) {
    p.validate(g.vertex_count());
    out << "vertex,block\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out << g.label(v) << ',' << p.block_of[v] << '\n';
    }
}

Partition read_partition_csv(std::istream& in, const Graph& g) {
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    Partition p;
    p.block_of.assign(g.vertex_count(), unset);
    std::map<std::string, std::uint32_t> relabel;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(line_no, "expected 'vertex,block'");
        auto label = line.substr(0, comma);
        auto block = line.substr(comma + 1);
        if (line_no == 1 && label == "vertex") continue;
        Vertex v = g.vertex_of(label);
        if (p.block_of[v] != unset) throw ParseError(line_no, "vertex '" + label + "' listed twice");
        auto [it, inserted] = relabel.emplace(block, static_cast<std::uint32_t>(relabel.size()));
        p.block_of[v] = it->second;
    }
    if (std::find(p.block_of.begin(), p.block_of.end(), unset) != p.block_of.end()) {
        throw GraphError("partition file does not assign every vertex");
    }
    p.block_count = static_cast<std::uint32_t>(relabel.size());
    return p;
}

}  // namespace lgc
