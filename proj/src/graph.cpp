#include "parfit/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace parfit {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
    Graph g;
    g.offsets_.assign(vertex_count + 1, 0);
    for (const auto& e : edges) {
        if (e.u == e.v) {
            throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
        }
        if (e.u >= vertex_count || e.v >= vertex_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        g.offsets_[v + 1] += g.offsets_[v];
    }
    g.neighbors_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
        g.neighbors_[cursor[e.u]++] = e.v;
        g.neighbors_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last) {
            throw std::invalid_argument("duplicate edge at vertex " + std::to_string(v));
        }
    }
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.push_back({u, v});
        }
    }
    return out;
}

Components connected_components(const Graph& g) {
    constexpr auto unseen = static_cast<std::uint32_t>(-1);
    const std::size_t n = g.vertex_count();
    Components c;
    c.label.assign(n, unseen);
    std::vector<Vertex> queue;
    queue.reserve(n);
    for (Vertex s = 0; s < n; ++s) {
        if (c.label[s] != unseen) continue;
        const auto id = static_cast<std::uint32_t>(c.sizes.size());
        queue.clear();
        queue.push_back(s);
        c.label[s] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (Vertex w : g.neighbors(queue[head])) {
                if (c.label[w] == unseen) {
                    c.label[w] = id;
                    queue.push_back(w);
                }
            }
        }
        c.sizes.push_back(queue.size());
    }
    return c;
}

Graph largest_connected_component(const Graph& g) {
    if (g.vertex_count() == 0) return g;
    const Components c = connected_components(g);
    if (c.sizes.size() == 1) return g;
    // max_element returns the first maximum, i.e. the component with the smallest id.
    const auto best = static_cast<std::uint32_t>(
        std::max_element(c.sizes.begin(), c.sizes.end()) - c.sizes.begin());

    std::vector<Vertex> relabel(g.vertex_count());
    Vertex next = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (c.label[v] == best) relabel[v] = next++;
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (c.label[e.u] == best) edges.push_back({relabel[e.u], relabel[e.v]});
    }
    return Graph::from_edges(next, edges);
}

}  // namespace parfit
