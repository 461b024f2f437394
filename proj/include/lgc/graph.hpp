#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lgc {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint64_t;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the edge-list reader; carries the 1-based line number of the offending line.
class ParseError : public GraphError {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyGraphError : public GraphError {
public:
    using GraphError::GraphError;
};

/// Immutable simple undirected graph in compressed adjacency form.
///
/// Neighbour lists are sorted ascending and symmetric. Structural self-loops and
/// parallel edges never survive construction; the lazy self-loop of the walk lives
/// only in transition_prob(). Vertices carry external string labels interned to
/// dense indices [0, n).
class Graph {
public:
    Graph() = default;

    /// Builds from undirected pairs over vertices [0, vertex_count). Self-loops and
    /// duplicates are dropped. Labels default to the decimal index.
    static Graph from_edges(std::size_t vertex_count,
                            std::span<const std::pair<Vertex, Vertex>> edges,
                            std::vector<std::string> labels = {});

    std::size_t vertex_count() const noexcept { return degrees_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    /// 2m, the volume of the whole vertex set.
    std::uint64_t total_volume() const noexcept { return 2 * static_cast<std::uint64_t>(edge_count_); }

    std::uint32_t degree(Vertex v) const { return degrees_[v]; }
    std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    bool contains_edge(Vertex u, Vertex v) const;
    bool valid(Vertex v) const noexcept { return v < vertex_count(); }

    const std::string& label(Vertex v) const { return labels_[v]; }
    std::span<const std::string> labels() const noexcept { return labels_; }
    /// Throws GraphError if the label is unknown.
    Vertex vertex_of(std::string_view label) const;
    bool has_label(std::string_view label) const;

    /// Approximate heap footprint of the adjacency structure.
    std::size_t bytes() const noexcept;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_ && a.labels_ == b.labels_;
    }

private:
    std::vector<EdgeIndex> offsets_{0};
    std::vector<Vertex> adjacency_;
    std::vector<std::uint32_t> degrees_;
    std::size_t edge_count_ = 0;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> index_;
};

struct LoadOptions {
    /// Lines whose first non-blank character is one of these are skipped.
    std::string comment_chars = "#%";
    /// SNAP/KONECT files sometimes carry weights or timestamps after the pair.
    bool ignore_extra_columns = false;
};

struct LoadStats {
    std::size_t lines = 0;
    std::size_t comment_lines = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

struct LoadedGraph {
    Graph graph;
    LoadStats stats;
};

/// Reads a whitespace-separated edge list. Labels are interned in order of first
/// appearance, so loading the same bytes twice gives identical graphs.
LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadedGraph load_edge_list_file(const std::string& path, const LoadOptions& options = {});

void write_edge_list(std::ostream& out, const Graph& g);

/// Lazy-walk transition probability: 1/2 to stay, 1/(2 d_x) to each neighbour.
double transition_prob(const Graph& g, Vertex x, Vertex y);

/// Connected component containing v, sorted ascending.
std::vector<Vertex> component_of(const Graph& g, Vertex v);

void check_vertex(const Graph& g, Vertex v);

}  // namespace lgc
