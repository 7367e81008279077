#pragma once

// Brute-force reference implementations used only by tests. They work on a
// dense adjacency matrix and share no code with the library's CSR routines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "parfit/graph.hpp"
#include "parfit/random.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix adjacency(std::size_t n, const std::vector<parfit::Edge>& edges) {
    Matrix a(n, std::vector<bool>(n, false));
    for (const auto& e : edges) a[e.u][e.v] = a[e.v][e.u] = true;
    return a;
}

inline std::vector<std::size_t> degrees(const Matrix& a) {
    std::vector<std::size_t> d(a.size(), 0);
    for (std::size_t u = 0; u < a.size(); ++u)
        for (std::size_t v = 0; v < a.size(); ++v) d[u] += a[u][v];
    return d;
}

inline double average_degree(const Matrix& a) {
    double total = 0;
    for (auto d : degrees(a)) total += static_cast<double>(d);
    return total / static_cast<double>(a.size());
}

/// Triple enumeration: for every vertex, test every pair of neighbors.
inline double clustering(const Matrix& a) {
    const std::size_t n = a.size();
    long double total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t pairs = 0, closed = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (!a[v][x]) continue;
            for (std::size_t y = x + 1; y < n; ++y) {
                if (!a[v][y]) continue;
                ++pairs;
                closed += a[x][y];
            }
        }
        if (pairs > 0) total += static_cast<long double>(closed) / pairs;
    }
    return static_cast<double>(total / n);
}

/// Two-pass mean / population standard deviation in long double.
inline double heterogeneity(const Matrix& a, double floor = -10.0) {
    const auto d = degrees(a);
    long double mean = 0;
    for (auto x : d) mean += x;
    mean /= d.size();
    long double var = 0;
    for (auto x : d) var += (x - mean) * (x - mean);
    var /= d.size();
    if (var == 0) return floor;
    return static_cast<double>(std::log10(std::sqrt(var) / mean));
}

/// BFS over the matrix; returns the vertex set of the largest component
/// (ties: the component containing the smallest vertex), sorted.
inline std::vector<std::size_t> largest_component(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> best;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp;
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            comp.push_back(u);
            for (std::size_t v = 0; v < n; ++v) {
                if (a[u][v] && !seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
            }
        }
        if (comp.size() > best.size()) best = comp;
    }
    std::sort(best.begin(), best.end());
    return best;
}

inline Matrix induced(const Matrix& a, const std::vector<std::size_t>& keep) {
    Matrix b(keep.size(), std::vector<bool>(keep.size(), false));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) b[i][j] = a[keep[i]][keep[j]];
    return b;
}

inline Matrix to_matrix(const parfit::Graph& g) {
    return adjacency(g.vertex_count(), g.edges());
}

/// All unordered pairs of 0..n-1 in lexicographic order.
inline std::vector<parfit::Edge> all_pairs(std::size_t n) {
    std::vector<parfit::Edge> p;
    for (parfit::Vertex u = 0; u < n; ++u)
        for (parfit::Vertex v = u + 1; v < n; ++v) p.push_back({u, v});
    return p;
}

/// Graph whose edge set is selected by the bits of `mask` over all_pairs(n).
inline std::vector<parfit::Edge> edges_from_mask(const std::vector<parfit::Edge>& pairs, std::uint64_t mask) {
    std::vector<parfit::Edge> e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) e.push_back(pairs[i]);
    return e;
}

/// Random G(n, p) by one coin per pair (the naive sampler).
inline std::vector<parfit::Edge> naive_gnp(std::size_t n, double p, parfit::Rng& rng) {
    std::vector<parfit::Edge> e;
    for (parfit::Vertex u = 0; u < n; ++u)
        for (parfit::Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < p) e.push_back({u, v});
    return e;
}

}  // namespace oracle
