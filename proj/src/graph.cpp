#include "lgc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lgc {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph Graph::from_edges(std::size_t vertex_count,
                        std::span<const std::pair<Vertex, Vertex>> edges,
                        std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != vertex_count) {
        throw GraphError("label count does not match vertex count");
    }
    std::vector<std::uint64_t> keys;
    keys.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw GraphError("edge endpoint out of range");
        }
        if (u != v) keys.push_back(edge_key(u, v));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    Graph g;
    g.degrees_.assign(vertex_count, 0);
    for (auto key : keys) {
        ++g.degrees_[key >> 32];
        ++g.degrees_[key & 0xffffffffu];
    }
    g.offsets_.assign(vertex_count + 1, 0);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + g.degrees_[v];
    }
    g.adjacency_.resize(g.offsets_.back());
    std::vector<EdgeIndex> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Keys are sorted by (min, max): writing both directions in key order leaves
    // every neighbour list sorted without a second pass.
    for (auto key : keys) {
        auto u = static_cast<Vertex>(key >> 32);
        auto v = static_cast<Vertex>(key & 0xffffffffu);
        g.adjacency_[cursor[v]++] = u;
    }
    for (auto key : keys) {
        auto u = static_cast<Vertex>(key >> 32);
        auto v = static_cast<Vertex>(key & 0xffffffffu);
        g.adjacency_[cursor[u]++] = v;
    }
    g.edge_count_ = keys.size();

    if (labels.empty()) {
        labels.reserve(vertex_count);
        for (std::size_t v = 0; v < vertex_count; ++v) labels.push_back(std::to_string(v));
    }
    g.labels_ = std::move(labels);
    g.index_.reserve(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        if (!g.index_.emplace(g.labels_[v], static_cast<Vertex>(v)).second) {
            throw GraphError("duplicate vertex label '" + g.labels_[v] + "'");
        }
    }
    return g;
}

bool Graph::contains_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Vertex Graph::vertex_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) throw GraphError("unknown vertex label '" + std::string(label) + "'");
    return it->second;
}

bool Graph::has_label(std::string_view label) const {
    return index_.contains(std::string(label));
}

std::size_t Graph::bytes() const noexcept {
    return offsets_.capacity() * sizeof(EdgeIndex) + adjacency_.capacity() * sizeof(Vertex) +
           degrees_.capacity() * sizeof(std::uint32_t);
}

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options) {
    LoadStats stats;
    std::vector<std::string> labels;
    std::unordered_map<std::string, Vertex> index;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index.emplace(label, static_cast<Vertex>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::vector<std::pair<Vertex, Vertex>> edges;
    std::string line;
    std::string a, b, extra;
    while (std::getline(in, line)) {
        ++stats.lines;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (options.comment_chars.find(line[first]) != std::string::npos) {
            ++stats.comment_lines;
            continue;
        }
        std::istringstream fields(line);
        if (!(fields >> a >> b)) {
            throw ParseError(stats.lines, "expected two vertex labels, found one");
        }
        if (fields >> extra && !options.ignore_extra_columns) {
            throw ParseError(stats.lines, "expected two vertex labels, found more");
        }
        Vertex u = intern(a);
        Vertex v = intern(b);
        if (u == v) {
            ++stats.self_loops_dropped;
            continue;
        }
        edges.emplace_back(u, v);
    }
    if (edges.empty()) throw EmptyGraphError("edge list contains no edges");

    auto n = labels.size();
    Graph g = Graph::from_edges(n, edges, std::move(labels));
    stats.duplicates_dropped = edges.size() - g.edge_count();
    return {std::move(g), stats};
}

LoadedGraph load_edge_list_file(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open '" + path + "'");
    return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex v : g.neighbors(u)) {
            if (u < v) out << g.label(u) << ' ' << g.label(v) << '\n';
        }
    }
}

void check_vertex(const Graph& g, Vertex v) {
    if (!g.valid(v)) {
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range [0, " +
                                std::to_string(g.vertex_count()) + ")");
    }
}

double transition_prob(const Graph& g, Vertex x, Vertex y) {
    check_vertex(g, x);
    check_vertex(g, y);
    auto d = g.degree(x);
    if (d == 0) throw GraphError("walk undefined at isolated vertex " + g.label(x));
    if (x == y) return 0.5;
    return g.contains_edge(x, y) ? 1.0 / (2.0 * d) : 0.0;
}

std::vector<Vertex> component_of(const Graph& g, Vertex v) {
    check_vertex(g, v);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> out{v};
    seen[v] = 1;
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (Vertex u : g.neighbors(out[head])) {
            if (!seen[u]) {
                seen[u] = 1;
                out.push_back(u);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lgc
