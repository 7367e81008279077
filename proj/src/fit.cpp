#include "parfit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "parfit/generators.hpp"

namespace parfit {

FeatureVector measure_sample(const Graph& g, ModelKind kind, double heterogeneity_floor) {
    if (g.vertex_count() > 0 && g.edge_count() == 0) {
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(parameter_count(kind));
        phi[0] = num_vertices(g);
        if (kind != ModelKind::er) phi[2] = -heterogeneity_floor;
        return {kind, std::move(phi)};
    }
    return feature_vector(g, kind, heterogeneity_floor);
}

FeatureModel graph_model(double heterogeneity_floor) {
    return [heterogeneity_floor](const ParamVector& params, Seed seed) {
        return measure_sample(sample_model(params, seed), params.kind, heterogeneity_floor);
    };
}

FitState::FitState(ParamVector theta0)
    : theta(std::move(theta0)),
      last_sign(static_cast<std::size_t>(theta.values.size()), 0),
      sign_changed(static_cast<std::size_t>(theta.values.size()), false),
      stored_sum(Eigen::VectorXd::Zero(theta.values.size())) {}

ParamVector init_theta(const FeatureVector& target, ModelKind kind, const FitConfig& config) {
    if (target.kind != kind || target.values.size() != parameter_count(kind)) {
        throw std::invalid_argument("target features do not match model " + std::string(to_string(kind)));
    }
    Eigen::VectorXd theta(parameter_count(kind));
    theta[0] = target.num_vertices();
    theta[1] = target.avg_degree();
    if (kind != ModelKind::er) theta[2] = config.initial_beta;
    if (kind == ModelKind::girg) theta[3] = config.initial_temperature;
    return {kind, std::move(theta)};
}

double gain(int iteration, double alpha) {
    if (alpha == 0.0) return 1.0;
    return std::pow(static_cast<double>(iteration) + 1.0, -alpha);
}

FitState step(FitState state, const FeatureVector& sample, const FeatureVector& target, const FitConfig& config) {
    const Eigen::Index p = state.theta.values.size();
    if (sample.values.size() != p || target.values.size() != p) {
        throw std::invalid_argument("dimension mismatch: theta has " + std::to_string(p) + " entries, sample " +
                                    std::to_string(sample.values.size()) + ", target " +
                                    std::to_string(target.values.size()));
    }
    const int i = state.iteration;
    Eigen::VectorXd delta = target.values - sample.values;
    if (config.delta_scale.size() == p) delta.array() *= config.delta_scale.array();

    for (Eigen::Index f = 0; f < p; ++f) {
        const int sign = (delta[f] > 0.0) - (delta[f] < 0.0);
        if (sign == 0) continue;
        auto& last = state.last_sign[static_cast<std::size_t>(f)];
        if (last != 0 && last != sign) state.sign_changed[static_cast<std::size_t>(f)] = true;
        last = sign;
    }
    if (!state.averaging_start) {
        const bool all_changed = std::all_of(state.sign_changed.begin(), state.sign_changed.end(), [](bool b) { return b; });
        if (all_changed || i >= config.sign_change_cap) state.averaging_start = std::min(i, config.sign_change_cap);
    }

    ParamVector current = state.theta;
    state.trace.push_back({current, sample, delta});
    if (state.averaging_start && i >= *state.averaging_start) {
        state.stored_sum += current.values;
        state.stored.push_back(current);
        state.mean_history.push_back(state.stored_sum / static_cast<double>(state.stored.size()));
    }
    state.theta.values = current.values + gain(i, config.alpha) * delta;
    ++state.iteration;
    return state;
}

ParamVector running_mean(const FitState& state) {
    if (state.stored.empty()) throw std::logic_error("running mean requested before averaging started");
    return {state.theta.kind, state.stored_sum / static_cast<double>(state.stored.size())};
}

bool converged(const std::vector<Eigen::VectorXd>& mean_history, const FitConfig& config) {
    const auto window = static_cast<std::size_t>(std::max(config.convergence_window, 1));
    if (mean_history.size() < window) return false;
    for (std::size_t j = mean_history.size() - window + 1; j < mean_history.size(); ++j) {
        const Eigen::ArrayXd prev = mean_history[j - 1].array();
        const Eigen::ArrayXd change =
            (mean_history[j].array() - prev).abs() / prev.abs().max(config.relative_change_epsilon);
        if (!(change < config.convergence_threshold).all()) return false;
    }
    return true;
}

FitResult fit(ModelKind kind, const FeatureVector& target, const FitConfig& config, Seed seed) {
    return fit(kind, target, config, seed, graph_model(config.heterogeneity_floor));
}

FitResult fit(ModelKind kind, const FeatureVector& target, const FitConfig& config, Seed seed,
              const FeatureModel& model) {
    FitState state(init_theta(target, kind, config));
    const auto max_stored = static_cast<std::size_t>(std::max(config.max_avg_iterations, 1));
    FitResult result;
    for (;;) {
        const FeatureVector sample = model(state.theta, derive_seed(seed, {static_cast<std::uint64_t>(state.iteration)}));
        state = step(std::move(state), sample, target, config);
        if (!state.averaging()) continue;
        if (converged(state.mean_history, config)) {
            result.terminated_by = Termination::converged;
            break;
        }
        if (state.stored.size() >= max_stored) {
            result.terminated_by = Termination::max_iterations;
            break;
        }
    }
    result.raw_mean = running_mean(state);
    result.fitted = clamp(result.raw_mean, /*round_n=*/false);
    result.iterations = state.iteration;
    result.averaging_start = *state.averaging_start;
    result.trace = std::move(state.trace);
    return result;
}

}  // namespace parfit
