#include "parfit/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace parfit {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::er: return "er";
        case ModelKind::chung_lu: return "cl";
        case ModelKind::girg: return "girg";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "er") return ModelKind::er;
    if (name == "cl" || name == "chung-lu") return ModelKind::chung_lu;
    if (name == "girg") return ModelKind::girg;
    throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected er, cl or girg)");
}

FeatureVector::FeatureVector(ModelKind k, Eigen::VectorXd v) : kind(k), values(std::move(v)) {
    if (values.size() != parameter_count(kind)) {
        throw std::invalid_argument("feature vector has " + std::to_string(values.size()) +
                                    " entries, model " + std::string(to_string(kind)) + " needs " +
                                    std::to_string(parameter_count(kind)));
    }
}

double num_vertices(const Graph& g) { return static_cast<double>(g.vertex_count()); }

double average_degree(const Graph& g) {
    if (g.vertex_count() == 0) throw std::domain_error("average degree of the empty graph");
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
}

double heterogeneity(const Graph& g, double floor) {
    if (g.edge_count() == 0) throw std::domain_error("heterogeneity of a graph without edges");
    // n * sum(d^2) - (sum d)^2 is exact in 128-bit integers, so regular
    // graphs hit the floor without rounding noise.
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto d = static_cast<unsigned __int128>(g.degree(v));
        sum += d;
        sum_sq += d * d;
    }
    const unsigned __int128 spread = static_cast<unsigned __int128>(g.vertex_count()) * sum_sq - sum * sum;
    if (spread == 0) return floor;
    // population cv = sqrt(n*sum_sq - sum^2) / sum
    const double cv = std::sqrt(static_cast<long double>(spread)) / static_cast<long double>(sum);
    return std::log10(cv);
}

std::vector<std::uint64_t> triangles_per_vertex(const Graph& g) {
    const std::size_t n = g.vertex_count();
    // Orient each edge towards the endpoint of higher (degree, id) rank; every
    // triangle is then found exactly once from its lowest-ranked corner.
    auto before = [&](Vertex a, Vertex b) {
        const auto da = g.degree(a), db = g.degree(b);
        return da < db || (da == db && a < b);
    };
    std::vector<std::size_t> out_offsets(n + 1, 0);
    std::vector<Vertex> out;
    out.reserve(g.edge_count());
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : g.neighbors(u)) {
            if (before(u, v)) out.push_back(v);
        }
        out_offsets[u + 1] = out.size();
    }

    std::vector<std::uint64_t> tri(n, 0);
    std::vector<Vertex> mark(n, static_cast<Vertex>(-1));
    for (Vertex u = 0; u < n; ++u) {
        for (auto i = out_offsets[u]; i < out_offsets[u + 1]; ++i) mark[out[i]] = u;
        for (auto i = out_offsets[u]; i < out_offsets[u + 1]; ++i) {
            const Vertex v = out[i];
            for (auto j = out_offsets[v]; j < out_offsets[v + 1]; ++j) {
                const Vertex w = out[j];
                if (mark[w] == u) {
                    ++tri[u];
                    ++tri[v];
                    ++tri[w];
                }
            }
        }
    }
    return tri;
}

double avg_local_clustering(const Graph& g) {
    if (g.vertex_count() == 0) throw std::domain_error("clustering of the empty graph");
    const auto tri = triangles_per_vertex(g);
    double total = 0.0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto d = static_cast<double>(g.degree(v));
        if (d >= 2) total += static_cast<double>(tri[v]) / (d * (d - 1) / 2);
    }
    return total / static_cast<double>(g.vertex_count());
}

FeatureVector feature_vector(const Graph& g, ModelKind kind, double heterogeneity_floor) {
    Eigen::VectorXd phi(parameter_count(kind));
    phi[0] = num_vertices(g);
    phi[1] = average_degree(g);
    if (kind != ModelKind::er) phi[2] = -heterogeneity(g, heterogeneity_floor);
    if (kind == ModelKind::girg) phi[3] = -avg_local_clustering(g);
    return {kind, std::move(phi)};
}

}  // namespace parfit
