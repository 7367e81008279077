#pragma once

#include <Eigen/Dense>

#include <string>

#include "parfit/features.hpp"

namespace parfit {

/// Valid sampling ranges. The fitter moves parameters additively and may
/// leave these ranges; samplers always see clamped values.
namespace limits {
inline constexpr double min_vertices = 2.0;
inline constexpr double max_vertices = 1e8;
inline constexpr double min_degree = 1e-3;
inline constexpr double min_beta = 2.01;
inline constexpr double max_beta = 50.0;
inline constexpr double min_temperature = 0.001;
inline constexpr double max_temperature = 0.999;
}  // namespace limits

/// Model parameters (n, k[, beta[, temperature]]). `n` is real-valued and
/// only rounded when a graph is sampled.
struct ParamVector {
    ModelKind kind = ModelKind::er;
    Eigen::VectorXd values;

    ParamVector() = default;
    ParamVector(ModelKind k, Eigen::VectorXd v);

    static ParamVector er(double n, double k);
    static ParamVector chung_lu(double n, double k, double beta);
    static ParamVector girg(double n, double k, double beta, double temperature);

    double n() const { return values[0]; }
    double k() const { return values[1]; }
    double beta() const { return values[2]; }
    double temperature() const { return values[3]; }

    std::string describe() const;
};

/// Clamps into the sampling ranges. With `round_n`, n is also rounded to
/// the nearest integer (as samplers need); otherwise it stays real.
ParamVector clamp(const ParamVector& params, bool round_n = true);

bool within_limits(const ParamVector& params);

}  // namespace parfit
