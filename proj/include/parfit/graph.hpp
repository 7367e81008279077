#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace parfit {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph stored as compressed sorted adjacency lists.
///
/// Immutable after construction. Edges are reported with u < v in
/// lexicographic order, so two graphs compare equal iff they have the same
/// vertex count and edge set.
class Graph {
public:
    Graph() = default;

    /// Builds a graph on `vertex_count` vertices. Throws std::invalid_argument
    /// on self-loops, out-of-range ids or duplicate edges (in either
    /// orientation).
    static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return neighbors_.size() / 2; }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {neighbors_.data() + offsets_[v], degree(v)};
    }

    bool has_edge(Vertex u, Vertex v) const;

    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
};

/// Component id per vertex (ids assigned in order of smallest member) and
/// the number of components.
struct Components {
    std::vector<std::uint32_t> label;
    std::vector<std::size_t> sizes;
};

Components connected_components(const Graph& g);

/// Induced subgraph on the largest connected component. Vertices are
/// relabeled 0..size-1 in increasing order of their original ids; among
/// equally large components the one holding the smallest id wins.
Graph largest_connected_component(const Graph& g);

}  // namespace parfit
