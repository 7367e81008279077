#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "parfit/graph.hpp"
#include "parfit/params.hpp"
#include "parfit/random.hpp"

namespace parfit {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CalibrationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeightSequence {
    std::vector<double> weights;
    double total = 0.0;

    static WeightSequence from(std::vector<double> w);
};

// ---------------------------------------------------------------------------
// Erdős–Rényi

/// G(n, p) before any component reduction. Pairs are visited by geometric
/// skipping over the linearized pair index, O(n + m) expected.
Graph draw_er(std::size_t n, double p, Rng& rng);

/// G(n, k/(n-1)) reduced to its largest component. `params` must already be
/// clamped (see clamp()); otherwise InvalidParameter is thrown.
Graph sample_er(const ParamVector& params, Seed seed);

// ---------------------------------------------------------------------------
// Chung–Lu

/// w_i = c * i^(-1/(beta-1)) for i = 1..n with c chosen so that sum w = k*n.
WeightSequence cl_weights(std::size_t n, double k, double beta);

/// Independent edges with p(u,v) = min(1, w_u w_v / W). Weights must be
/// non-increasing in the vertex index (as cl_weights produces); this lets the
/// sampler skip geometrically with an adaptive upper bound.
Graph draw_chung_lu(const WeightSequence& w, Rng& rng);

Graph sample_cl(const ParamVector& params, Seed seed);

// ---------------------------------------------------------------------------
// GIRG, one-dimensional torus

/// I.i.d. Pareto weights w = (1-u)^(-1/(beta-1)), minimum weight 1.
WeightSequence girg_weights(std::size_t n, double beta, Seed seed);

/// Maps a uniform variate on [0,1) to a Pareto weight.
double pareto_weight(double u, double beta);

std::vector<double> girg_positions(std::size_t n, Seed seed);

double torus_distance(double x, double y);

/// Result of degree calibration. The edge probability is
///   min(1, c * (w_u w_v / (d W))^(1/T)) = min(1, (s * w_u w_v / (d W))^(1/T))
/// with s = c^T. `distance_scale` holds s, which stays representable at low
/// temperatures where c itself over- or underflows.
struct GirgScale {
    double distance_scale = 1.0;
    double temperature = 0.5;

    /// c = s^(1/T); may be 0 or +inf in floating point for T close to 0.
    double c() const;
};

/// Edge probability of a single pair at torus distance `distance`.
double girg_edge_probability(double w_u, double w_v, double total_weight, double distance,
                             const GirgScale& scale);

/// Expected probability of a pair with q = w_u w_v / W, averaged over a
/// uniform torus distance (density 2 on [0, 1/2]).
double girg_pair_expectation(double q, const GirgScale& scale);

/// Expected average degree sum_u sum_{v != u} E[p(u,v)] / n, evaluated from
/// sorted weights and prefix sums in O(n log n).
double girg_expected_average_degree(const WeightSequence& w, const GirgScale& scale);

/// Scale such that the expected average degree equals k to relative
/// tolerance 1e-3. Throws CalibrationFailure if k exceeds n-1.
GirgScale calibrate_girg(const WeightSequence& w, double temperature, double k);

/// The constant c of the edge probability; see GirgScale::c().
double calibrate_girg_c(const WeightSequence& w, double temperature, double k);

struct GirgInstance {
    WeightSequence weights;
    std::vector<double> positions;
    GirgScale scale;
};

/// Weights, positions and calibrated scale for one sample.
GirgInstance make_girg_instance(const ParamVector& params, Seed seed);

enum class GirgMethod {
    /// Reference: one Bernoulli trial per pair, O(n^2).
    exact_pairs,
    /// Vertices bucketed into weight layers [2^i, 2^(i+1)) sorted by position;
    /// each (vertex, layer) walk skips geometrically under a distance-monotone
    /// upper bound and thins to the exact probability.
    weight_layers,
};

Graph draw_girg(const GirgInstance& inst, Rng& rng, GirgMethod method = GirgMethod::weight_layers);

Graph sample_girg(const ParamVector& params, Seed seed, GirgMethod method = GirgMethod::weight_layers);

// ---------------------------------------------------------------------------

/// Clamps, rounds n and dispatches to the model's sampler.
Graph sample_model(const ParamVector& params, Seed seed);

}  // namespace parfit
