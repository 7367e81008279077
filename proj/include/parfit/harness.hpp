#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parfit/fit.hpp"
#include "parfit/graph.hpp"
#include "parfit/params.hpp"

namespace parfit {

/// One predictive-simulation (or real-network) result.
struct EvalRecord {
    std::size_t index = 0;              ///< position in the configuration list
    ModelKind kind = ModelKind::er;
    std::optional<ParamVector> truth;   ///< generating parameters; none for real networks
    FeatureVector target;
    ParamVector fitted;
    FeatureVector achieved;             ///< mean features of samples at `fitted`
    Eigen::VectorXd abs_error;
    int iterations = 0;
    int averaging_start = 0;
    Termination terminated_by = Termination::max_iterations;
    double seconds = 0.0;
    std::optional<std::string> error;   ///< set when the configuration failed

    bool ok() const { return !error.has_value(); }
};

struct SimulationSetup {
    ModelKind kind = ModelKind::er;
    std::vector<ParamVector> configurations;
    int samples_per_side = 50;
    FitConfig config;
    Seed master_seed = 1;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Graph model by default; tests inject deterministic models.
    FeatureModel model;
    /// Invoked under a lock, in configuration order, as records complete.
    std::function<void(const EvalRecord&)> on_record;
};

/// Mean feature vector over `samples` draws at `params`, seeded from
/// derive_seed(base, {replicate}).
FeatureVector mean_features(const FeatureModel& model, const ParamVector& params, int samples, Seed base);

/// For each configuration: average features of samples_per_side draws as the
/// target, fit, then average samples_per_side draws at the fitted parameters.
std::vector<EvalRecord> predictive_simulation(const SimulationSetup& setup);

struct FeatureSummary {
    double pearson = 0.0;
    double mae = 0.0;
    double p90_abs_error = 0.0;
};

struct Aggregate {
    ModelKind kind = ModelKind::er;
    std::vector<FeatureSummary> features;
    double mean_iterations = 0.0;
    std::size_t records = 0;
    std::size_t failed = 0;
};

/// Per-feature Pearson/MAE of achieved vs target over successful records.
/// Needs at least two successful records.
Aggregate aggregate(std::span<const EvalRecord> records);

enum class SweepVariable { alpha, threshold };

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepRow {
    double value = 0.0;
    Eigen::VectorXd mae;
    double mean_iterations = 0.0;
    std::size_t failed = 0;
};

struct SweepReport {
    SweepVariable variable = SweepVariable::alpha;
    ModelKind kind = ModelKind::er;
    std::vector<SweepRow> rows;
    std::vector<std::vector<EvalRecord>> records;   ///< per swept value
};

/// Reruns predictive_simulation with one FitConfig field replaced per value.
/// Every run uses the base master seed.
SweepReport sweep(SweepVariable variable, std::span<const double> values, const SimulationSetup& base);

/// Fits a GIRG to the largest component of `g` and samples `samples`
/// graphs at the fitted parameters.
EvalRecord fit_real_network(const Graph& g, const FitConfig& config, int samples, Seed master_seed,
                            const FeatureModel& model = {});

/// Lattices matching the full-scale sweep cardinalities (ER 171, CL 500,
/// GIRG 500). See describe_grid() for the exact axes.
std::vector<ParamVector> default_grids(ModelKind kind);

/// Small grids (at most 20 points, n <= 2000) for quick runs.
std::vector<ParamVector> desk_grid(ModelKind kind);

/// One-line description of a named grid ("full" or "desk").
std::string describe_grid(ModelKind kind, std::string_view which);

}  // namespace parfit
