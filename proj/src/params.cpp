#include "parfit/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace parfit {

ParamVector::ParamVector(ModelKind k, Eigen::VectorXd v) : kind(k), values(std::move(v)) {
    if (values.size() != parameter_count(kind)) {
        throw std::invalid_argument("parameter vector has " + std::to_string(values.size()) +
                                    " entries, model " + std::string(to_string(kind)) + " needs " +
                                    std::to_string(parameter_count(kind)));
    }
}

ParamVector ParamVector::er(double n, double k) { return {ModelKind::er, Eigen::Vector2d(n, k)}; }

ParamVector ParamVector::chung_lu(double n, double k, double beta) {
    return {ModelKind::chung_lu, Eigen::Vector3d(n, k, beta)};
}

ParamVector ParamVector::girg(double n, double k, double beta, double temperature) {
    return {ModelKind::girg, Eigen::Vector4d(n, k, beta, temperature)};
}

std::string ParamVector::describe() const {
    std::ostringstream os;
    os << to_string(kind) << "(n=" << n() << ", k=" << k();
    if (kind != ModelKind::er) os << ", beta=" << beta();
    if (kind == ModelKind::girg) os << ", T=" << temperature();
    os << ')';
    return os.str();
}

ParamVector clamp(const ParamVector& params, bool round_n) {
    ParamVector out = params;
    auto& v = out.values;
    // NaN would slip through std::clamp; treat it as the lower bound.
    auto safe = [](double x, double lo, double hi) { return std::isnan(x) ? lo : std::clamp(x, lo, hi); };
    v[0] = safe(round_n ? std::round(v[0]) : v[0], limits::min_vertices, limits::max_vertices);
    v[1] = safe(v[1], limits::min_degree, std::round(v[0]) - 1.0);
    if (out.kind != ModelKind::er) v[2] = safe(v[2], limits::min_beta, limits::max_beta);
    if (out.kind == ModelKind::girg) v[3] = safe(v[3], limits::min_temperature, limits::max_temperature);
    return out;
}

bool within_limits(const ParamVector& params) {
    const auto& v = params.values;
    if (!(std::round(v[0]) >= limits::min_vertices && std::round(v[0]) <= limits::max_vertices)) return false;
    if (!(v[1] >= limits::min_degree && v[1] <= std::round(v[0]) - 1.0)) return false;
    if (params.kind != ModelKind::er && !(v[2] >= limits::min_beta && v[2] <= limits::max_beta)) return false;
    if (params.kind == ModelKind::girg &&
        !(v[3] >= limits::min_temperature && v[3] <= limits::max_temperature)) {
        return false;
    }
    return true;
}

}  // namespace parfit
