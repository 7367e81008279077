#pragma once

#include <Eigen/Dense>

#include <string_view>

#include "parfit/graph.hpp"

namespace parfit {

enum class ModelKind { er, chung_lu, girg };

/// Number of parameters (and features) of a model: 2, 3 or 4.
constexpr Eigen::Index parameter_count(ModelKind kind) {
    switch (kind) {
        case ModelKind::er: return 2;
        case ModelKind::chung_lu: return 3;
        case ModelKind::girg: return 4;
    }
    return 0;
}

std::string_view to_string(ModelKind kind);
/// Accepts "er", "cl" / "chung-lu", "girg". Throws std::invalid_argument.
ModelKind parse_model_kind(std::string_view name);

inline constexpr double default_heterogeneity_floor = -10.0;

/// Measured features in parameter order:
///   (num_vertices, avg_degree[, -heterogeneity[, -clustering]]).
struct FeatureVector {
    ModelKind kind = ModelKind::er;
    Eigen::VectorXd values;

    FeatureVector() = default;
    FeatureVector(ModelKind k, Eigen::VectorXd v);

    double num_vertices() const { return values[0]; }
    double avg_degree() const { return values[1]; }
    double heterogeneity() const { return -values[2]; }
    double clustering() const { return -values[3]; }
};

double num_vertices(const Graph& g);

/// 2|E| / |V|. Throws std::domain_error on the empty graph.
double average_degree(const Graph& g);

/// log10 of the coefficient of variation (population std / mean) of the
/// degree sequence. Regular graphs return `floor`. Throws std::domain_error
/// when the graph has no edges.
double heterogeneity(const Graph& g, double floor = default_heterogeneity_floor);

/// Mean local clustering coefficient; vertices of degree < 2 count as 0.
/// Throws std::domain_error on the empty graph.
double avg_local_clustering(const Graph& g);

/// Per-vertex triangle counts.
std::vector<std::uint64_t> triangles_per_vertex(const Graph& g);

FeatureVector feature_vector(const Graph& g, ModelKind kind,
                             double heterogeneity_floor = default_heterogeneity_floor);

}  // namespace parfit
