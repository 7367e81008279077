#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

#include "parfit/features.hpp"
#include "parfit/params.hpp"
#include "parfit/random.hpp"

namespace parfit {

struct FitConfig {
    double alpha = 0.0;                 ///< gain exponent, a_i = (i+1)^-alpha
    int sign_change_cap = 30;           ///< latest iteration at which averaging starts
    int max_avg_iterations = 200;       ///< stored iterates before giving up on convergence
    int convergence_window = 10;        ///< running means that must agree
    double convergence_threshold = 0.01;
    double heterogeneity_floor = default_heterogeneity_floor;
    double initial_temperature = 0.5;
    double initial_beta = 3.0;
    double relative_change_epsilon = 1e-9;
    /// Optional per-feature factor applied to the deviation; empty = identity.
    Eigen::VectorXd delta_scale;
};

/// Draws one graph at `params` (unclamped; the model clamps) and measures it.
using FeatureModel = std::function<FeatureVector(const ParamVector& params, Seed seed)>;

/// Features of a sampled graph. Unlike feature_vector(), a graph without
/// edges is accepted: its degree sequence is constant, so it takes the
/// heterogeneity floor and clustering 0.
FeatureVector measure_sample(const Graph& g, ModelKind kind, double heterogeneity_floor);

/// sample_model() followed by measure_sample().
FeatureModel graph_model(double heterogeneity_floor = default_heterogeneity_floor);

struct TraceEntry {
    ParamVector theta;       ///< parameters sampled in this iteration
    FeatureVector sample;    ///< features of that sample
    Eigen::VectorXd delta;   ///< target - sample
};

struct FitState {
    int iteration = 0;
    ParamVector theta;
    std::vector<int> last_sign;        ///< sign of the latest nonzero delta per feature, 0 if none yet
    std::vector<bool> sign_changed;    ///< feature has changed sign at least once
    std::optional<int> averaging_start;
    std::vector<ParamVector> stored;   ///< theta_j for j >= averaging_start
    Eigen::VectorXd stored_sum;
    std::vector<Eigen::VectorXd> mean_history;
    std::vector<TraceEntry> trace;

    FitState() = default;
    explicit FitState(ParamVector theta0);

    bool averaging() const { return !stored.empty(); }
};

enum class Termination { converged, max_iterations };

struct FitResult {
    ParamVector fitted;         ///< running mean, clamped into the sampling range
    ParamVector raw_mean;       ///< running mean before clamping
    int iterations = 0;         ///< number of model samples drawn
    int averaging_start = 0;
    Termination terminated_by = Termination::max_iterations;
    std::vector<TraceEntry> trace;
};

/// n and k from the target, beta and temperature from the configuration.
ParamVector init_theta(const FeatureVector& target, ModelKind kind, const FitConfig& config);

/// (i+1)^-alpha.
double gain(int iteration, double alpha);

/// One update theta <- theta + a_i (target - sample) with sign-change and
/// averaging bookkeeping. Throws std::invalid_argument on dimension mismatch.
FitState step(FitState state, const FeatureVector& sample, const FeatureVector& target, const FitConfig& config);

/// Mean of the stored iterates. Throws std::logic_error before averaging starts.
ParamVector running_mean(const FitState& state);

/// True iff the last `convergence_window` running means all differ from their
/// predecessor by less than the relative threshold in every parameter.
bool converged(const std::vector<Eigen::VectorXd>& mean_history, const FitConfig& config);

FitResult fit(ModelKind kind, const FeatureVector& target, const FitConfig& config, Seed seed);
FitResult fit(ModelKind kind, const FeatureVector& target, const FitConfig& config, Seed seed,
              const FeatureModel& model);

}  // namespace parfit
