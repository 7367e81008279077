#include "parfit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace parfit {

namespace {

std::size_t checked_vertex_count(const ParamVector& params, ModelKind expected) {
    if (params.kind != expected) {
        throw InvalidParameter("expected " + std::string(to_string(expected)) + " parameters, got " +
                               std::string(to_string(params.kind)));
    }
    if (!within_limits(params)) {
        throw InvalidParameter("parameters outside the sampling range: " + params.describe());
    }
    return static_cast<std::size_t>(std::llround(params.n()));
}

}  // namespace

WeightSequence WeightSequence::from(std::vector<double> w) {
    WeightSequence out;
    out.total = std::accumulate(w.begin(), w.end(), 0.0);
    out.weights = std::move(w);
    return out;
}

Graph draw_er(std::size_t n, double p, Rng& rng) {
    std::vector<Edge> edges;
    if (n < 2 || p <= 0.0) return Graph::from_edges(n, edges);
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    edges.reserve(static_cast<std::size_t>(std::min(1.1 * p * static_cast<double>(pairs) + 16.0, 1e9)));

    // Row u holds the pairs (u, u+1), ..., (u, n-1).
    Vertex u = 0;
    std::uint64_t row_start = 0;
    std::uint64_t row_end = n - 1;
    std::uint64_t idx = rng.geometric_skip(p, pairs);
    while (idx < pairs) {
        while (idx >= row_end) {
            ++u;
            row_start = row_end;
            row_end += n - 1 - u;
        }
        edges.push_back({u, static_cast<Vertex>(u + 1 + (idx - row_start))});
        idx += 1 + rng.geometric_skip(p, pairs);
    }
    return Graph::from_edges(n, edges);
}

Graph sample_er(const ParamVector& params, Seed seed) {
    const std::size_t n = checked_vertex_count(params, ModelKind::er);
    const double p = std::min(1.0, params.k() / static_cast<double>(n - 1));
    Rng rng(seed);
    return largest_connected_component(draw_er(n, p, rng));
}

WeightSequence cl_weights(std::size_t n, double k, double beta) {
    if (n < 2 || !(k > 0.0) || !(beta > 2.0)) {
        throw InvalidParameter("Chung-Lu weights need n >= 2, k > 0, beta > 2");
    }
    const double exponent = -1.0 / (beta - 1.0);
    std::vector<double> w(n);
    double raw_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::pow(static_cast<double>(i + 1), exponent);
        raw_total += w[i];
    }
    const double c = k * static_cast<double>(n) / raw_total;
    for (auto& x : w) x *= c;
    WeightSequence out;
    out.weights = std::move(w);
    out.total = k * static_cast<double>(n);
    return out;
}

Graph draw_chung_lu(const WeightSequence& ws, Rng& rng) {
    const auto& w = ws.weights;
    const std::size_t n = w.size();
    const double W = ws.total;
    std::vector<Edge> edges;
    for (std::size_t u = 0; u + 1 < n; ++u) {
        std::size_t v = u + 1;
        double bound = std::min(1.0, w[u] * w[v] / W);
        while (v < n && bound > 0.0) {
            if (bound < 1.0) {
                v += rng.geometric_skip(bound, n);
                if (v >= n) break;
            }
            const double p = std::min(1.0, w[u] * w[v] / W);
            if (rng.uniform() * bound < p) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
            bound = p;
            ++v;
        }
    }
    return Graph::from_edges(n, edges);
}

Graph sample_cl(const ParamVector& params, Seed seed) {
    const std::size_t n = checked_vertex_count(params, ModelKind::chung_lu);
    Rng rng(seed);
    return largest_connected_component(draw_chung_lu(cl_weights(n, params.k(), params.beta()), rng));
}

Graph sample_girg(const ParamVector& params, Seed seed, GirgMethod method) {
    checked_vertex_count(params, ModelKind::girg);
    const GirgInstance inst = make_girg_instance(params, seed);
    Rng rng(derive_seed(seed, {2}));
    return largest_connected_component(draw_girg(inst, rng, method));
}

Graph sample_model(const ParamVector& params, Seed seed) {
    const ParamVector p = clamp(params);
    switch (p.kind) {
        case ModelKind::er: return sample_er(p, seed);
        case ModelKind::chung_lu: return sample_cl(p, seed);
        case ModelKind::girg: return sample_girg(p, seed);
    }
    throw InvalidParameter("unknown model kind");
}

}  // namespace parfit
