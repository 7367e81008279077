#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace parfit {

/// Pearson correlation of two equally long vectors (or expressions).
/// Throws std::invalid_argument on length mismatch or fewer than two
/// entries, std::domain_error if either side has zero variance.
template <typename DerivedX, typename DerivedY>
double pearson(const Eigen::DenseBase<DerivedX>& xs, const Eigen::DenseBase<DerivedY>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two values");
    const Eigen::ArrayXd x = xs.derived().template cast<double>().array();
    const Eigen::ArrayXd y = ys.derived().template cast<double>().array();
    const Eigen::ArrayXd dx = x - x.mean();
    const Eigen::ArrayXd dy = y - y.mean();
    const double sxx = dx.square().sum();
    const double syy = dy.square().sum();
    if (sxx == 0.0 || syy == 0.0) throw std::domain_error("pearson: zero variance");
    return std::clamp((dx * dy).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Mean absolute difference. Throws std::invalid_argument on length
/// mismatch or empty input.
template <typename DerivedX, typename DerivedY>
double mae(const Eigen::DenseBase<DerivedX>& xs, const Eigen::DenseBase<DerivedY>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("mae: length mismatch");
    if (xs.size() == 0) throw std::invalid_argument("mae: empty input");
    return (xs.derived().template cast<double>().array() - ys.derived().template cast<double>().array())
        .abs()
        .mean();
}

/// Linear-interpolated percentile, q in [0, 1].
template <typename Derived>
double percentile(const Eigen::DenseBase<Derived>& values, double q) {
    if (values.size() == 0) throw std::invalid_argument("percentile: empty input");
    std::vector<double> v(static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i) v[static_cast<std::size_t>(i)] = values.derived()(i);
    std::sort(v.begin(), v.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace parfit
