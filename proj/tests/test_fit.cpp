#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parfit/fit.hpp"
#include "parfit/generators.hpp"
#include "parfit/harness.hpp"

using namespace parfit;

namespace {

FeatureVector fv(ModelKind kind, std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return {kind, v};
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

/// phi(H_theta) = theta, no noise.
FeatureModel identity_model() {
    return [](const ParamVector& p, Seed) { return FeatureVector{p.kind, p.values}; };
}

/// theta plus seed-driven Gaussian-ish noise of the given scale per entry.
FeatureModel noisy_identity(Eigen::VectorXd scale) {
    return [scale](const ParamVector& p, Seed seed) {
        Rng rng(seed);
        Eigen::VectorXd v = p.values;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            double z = -6;
            for (int j = 0; j < 12; ++j) z += rng.uniform();
            v[i] += scale[i] * z;
        }
        return FeatureVector{p.kind, v};
    };
}

/// Independent scalar replay of the averaging start from recorded deltas.
int reference_averaging_start(const std::vector<TraceEntry>& trace, int cap) {
    const std::size_t p = static_cast<std::size_t>(trace.front().delta.size());
    std::vector<double> last(p, 0.0);
    std::vector<bool> changed(p, false);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        for (std::size_t f = 0; f < p; ++f) {
            const double d = trace[i].delta[static_cast<Eigen::Index>(f)];
            if (d == 0.0) continue;
            if (last[f] != 0.0 && (last[f] > 0.0) != (d > 0.0)) changed[f] = true;
            last[f] = d;
        }
        bool all = true;
        for (bool c : changed) all = all && c;
        if (all) return std::min(static_cast<int>(i), cap);
        if (static_cast<int>(i) >= cap) return cap;
    }
    return -1;
}

}  // namespace

TEST_CASE("init_theta") {
    FitConfig cfg;
    const ParamVector er = init_theta(fv(ModelKind::er, {1000, 5}), ModelKind::er, cfg);
    CHECK(er.values == vec({1000, 5}));
    const ParamVector g = init_theta(fv(ModelKind::girg, {10000, 8, -0.3, -0.5}), ModelKind::girg, cfg);
    CHECK(g.values == vec({10000, 8, 3.0, 0.5}));
    const ParamVector cl = init_theta(fv(ModelKind::chung_lu, {500, 4, 0.1}), ModelKind::chung_lu, cfg);
    CHECK(cl.values == vec({500, 4, 3.0}));
    CHECK_THROWS_AS(init_theta(fv(ModelKind::er, {1000, 5}), ModelKind::girg, cfg), std::invalid_argument);
}

TEST_CASE("gain") {
    CHECK(gain(0, 0.5) == 1.0);
    CHECK(gain(3, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (int i : {0, 1, 7, 1000}) CHECK(gain(i, 0.0) == 1.0);
    CHECK(gain(9, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("step arithmetic") {
    FitConfig cfg;
    FitState s(ParamVector::er(1000, 5));
    s = step(std::move(s), fv(ModelKind::er, {900, 6}), fv(ModelKind::er, {1100, 4}), cfg);
    CHECK(s.theta.values == vec({1200, 3}));
    CHECK(s.iteration == 1);
    REQUIRE(s.trace.size() == 1);
    CHECK(s.trace[0].theta.values == vec({1000, 5}));
    CHECK(s.trace[0].delta == vec({200, -2}));

    FitConfig damped;
    damped.alpha = 0.5;
    FitState t(ParamVector::er(1000, 5));
    t.iteration = 3;
    t = step(std::move(t), fv(ModelKind::er, {900, 6}), fv(ModelKind::er, {1100, 4}), damped);
    CHECK(t.theta.values == vec({1100, 4}));

    FitConfig scaled;
    scaled.delta_scale = vec({0.5, 2.0});
    FitState u(ParamVector::er(1000, 5));
    u = step(std::move(u), fv(ModelKind::er, {900, 6}), fv(ModelKind::er, {1100, 4}), scaled);
    CHECK(u.theta.values == vec({1100, 1}));

    CHECK_THROWS_AS(step(FitState(ParamVector::er(10, 2)), fv(ModelKind::chung_lu, {1, 2, 3}),
                         fv(ModelKind::er, {1, 2}), cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(step(FitState(ParamVector::er(10, 2)), fv(ModelKind::er, {1, 2}),
                         fv(ModelKind::girg, {1, 2, 3, 4}), cfg),
                    std::invalid_argument);
}

TEST_CASE("sign change bookkeeping") {
    FitConfig cfg;
    auto run = [&](std::vector<double> deltas) {
        // feature 1 alternates so only feature 0 decides
        FitState s(ParamVector::er(100, 5));
        std::vector<bool> seen;
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            const double alt = i % 2 == 0 ? 1.0 : -1.0;
            s = step(std::move(s), fv(ModelKind::er, {0, 0}), fv(ModelKind::er, {deltas[i], alt}), cfg);
            seen.push_back(s.sign_changed[0]);
        }
        return std::make_pair(seen, s.averaging_start);
    };
    {
        auto [seen, start] = run({2, 1, -1});
        CHECK(seen == std::vector<bool>{false, false, true});
        REQUIRE(start);
        CHECK(*start == 2);
    }
    {
        auto [seen, start] = run({2, 0, -1});
        CHECK(seen == std::vector<bool>{false, false, true});
        CHECK(*start == 2);
    }
    {
        auto [seen, start] = run({0, 0, 3, 0, 3});
        CHECK(seen == std::vector<bool>(5, false));
        CHECK_FALSE(start);
    }
}

TEST_CASE("averaging start is capped") {
    FitConfig cfg;
    FitState s(ParamVector::er(100, 5));
    for (int i = 0; i <= 31; ++i) {
        s = step(std::move(s), fv(ModelKind::er, {0, 0}), fv(ModelKind::er, {1, 1}), cfg);
        if (i < 30) CHECK_FALSE(s.averaging());
    }
    REQUIRE(s.averaging_start);
    CHECK(*s.averaging_start == 30);
    CHECK(s.stored.size() == 2);
    CHECK(s.mean_history.size() == 2);
}

TEST_CASE("running mean") {
    FitState s(ParamVector::er(1, 1));
    CHECK_THROWS_AS(running_mean(s), std::logic_error);
    auto push = [&](double a) {
        s.stored.push_back(ParamVector::er(a, 1));
        s.stored_sum += vec({a, 1});
    };
    push(4);
    CHECK(running_mean(s).values == vec({4, 1}));
    push(6);
    CHECK(running_mean(s).values == vec({5, 1}));

    FitState t(ParamVector::er(1, 1));
    for (double a : {1.0, 2.0, 3.0}) {
        t.stored.push_back(ParamVector::er(a, 1));
        t.stored_sum += vec({a, 1});
    }
    CHECK(running_mean(t).values == vec({2, 1}));
}

TEST_CASE("convergence rule") {
    FitConfig cfg;
    std::vector<Eigen::VectorXd> constant(10, vec({1000, 5}));
    CHECK(converged(constant, cfg));
    CHECK_FALSE(converged(std::vector<Eigen::VectorXd>(5, vec({1000, 5})), cfg));
    CHECK_FALSE(converged(std::vector<Eigen::VectorXd>(9, vec({1000, 5})), cfg));

    auto jump = constant;
    jump.back() = vec({1000, 5.25});
    CHECK_FALSE(converged(jump, cfg));

    // the window only looks at the most recent values
    std::vector<Eigen::VectorXd> settled = {vec({10, 1})};
    for (int i = 0; i < 10; ++i) settled.push_back(vec({1000, 5}));
    CHECK(converged(settled, cfg));

    // just below / at the threshold
    std::vector<Eigen::VectorXd> drift;
    double x = 100;
    for (int i = 0; i < 10; ++i, x *= 1.0099) drift.push_back(vec({x, 1}));
    CHECK(converged(drift, cfg));
    drift.clear();
    x = 100;
    for (int i = 0; i < 10; ++i, x *= 1.0101) drift.push_back(vec({x, 1}));
    CHECK_FALSE(converged(drift, cfg));

    // zero components use the epsilon guard
    std::vector<Eigen::VectorXd> zeros(10, vec({0, 1}));
    CHECK(converged(zeros, cfg));
    zeros.back() = vec({1e-6, 1});
    CHECK_FALSE(converged(zeros, cfg));
}

TEST_CASE("identity model reaches the target in one step") {
    FitConfig cfg;
    const FeatureVector target = fv(ModelKind::girg, {2500, 7.5, 2.7, 0.35});
    const FitResult r = fit(ModelKind::girg, target, cfg, 1, identity_model());
    CHECK((r.fitted.values - target.values).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(r.terminated_by == Termination::converged);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].theta.values == target.values);
    // n and k never change sign (delta is zero), so averaging starts at the cap
    CHECK(r.averaging_start == 30);
    CHECK(r.iterations == 30 + 10);

    const FitResult again = fit(ModelKind::girg, target, cfg, 999, identity_model());
    CHECK(again.fitted.values == r.fitted.values);
    CHECK(again.iterations == r.iterations);
}

TEST_CASE("fitted value lies in the hull of the stored iterates") {
    FitConfig cfg;
    const FeatureVector target = fv(ModelKind::chung_lu, {800, 6, 3.5});
    for (Seed seed = 0; seed < 20; ++seed) {
        const FitResult r = fit(ModelKind::chung_lu, target, cfg, seed, noisy_identity(vec({20, 0.3, 0.2})));
        CHECK(r.averaging_start <= 30);
        const int stored = r.iterations - r.averaging_start;
        CHECK(stored <= 200);
        CHECK(stored >= 1);
        Eigen::VectorXd lo = r.trace[static_cast<std::size_t>(r.averaging_start)].theta.values, hi = lo;
        for (std::size_t j = static_cast<std::size_t>(r.averaging_start); j < r.trace.size(); ++j) {
            lo = lo.cwiseMin(r.trace[j].theta.values);
            hi = hi.cwiseMax(r.trace[j].theta.values);
        }
        CHECK(((r.raw_mean.values.array() >= lo.array() - 1e-9) && (r.raw_mean.values.array() <= hi.array() + 1e-9)).all());
        CHECK(within_limits(clamp(r.fitted)));
        CHECK(reference_averaging_start(r.trace, cfg.sign_change_cap) == r.averaging_start);
    }
}

TEST_CASE("non-converging runs stop after the averaging limit") {
    FitConfig cfg;
    cfg.convergence_threshold = 1e-9;
    const FeatureVector target = fv(ModelKind::er, {1000, 5});
    const FitResult r = fit(ModelKind::er, target, cfg, 3, noisy_identity(vec({50, 1})));
    CHECK(r.terminated_by == Termination::max_iterations);
    CHECK(r.iterations - r.averaging_start == 200);
    CHECK(r.averaging_start <= 30);

    cfg.max_avg_iterations = 7;
    const FitResult short_run = fit(ModelKind::er, target, cfg, 3, noisy_identity(vec({50, 1})));
    CHECK(short_run.iterations - short_run.averaging_start == 7);
}

TEST_CASE("fitted parameters are clamped for reporting") {
    FitConfig cfg;
    // the identity model happily follows an out-of-range target
    const FitResult r = fit(ModelKind::girg, fv(ModelKind::girg, {1000, 5, 1.0, 1.5}), cfg, 1, identity_model());
    CHECK(r.raw_mean.beta() == doctest::Approx(1.0));
    CHECK(r.fitted.beta() == limits::min_beta);
    CHECK(r.fitted.temperature() == limits::max_temperature);
    // n stays real-valued in the report
    const FitResult real_n = fit(ModelKind::er, fv(ModelKind::er, {1000.4, 5}), cfg, 1, identity_model());
    CHECK(real_n.fitted.n() == doctest::Approx(1000.4));
}

TEST_CASE("measure_sample tolerates edgeless samples") {
    const Graph lonely = Graph::from_edges(1, {});
    const FeatureVector f = measure_sample(lonely, ModelKind::girg, -10);
    CHECK(f.values == vec({1, 0, 10, 0}));
    const Graph k2 = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    CHECK(measure_sample(k2, ModelKind::er, -10).values == vec({2, 1}));
}

TEST_CASE("graph-model fit is reproducible and ER fits its own features") {
    FitConfig cfg;
    const FeatureModel model = graph_model();
    const ParamVector truth = ParamVector::er(1000, 5);
    const FeatureVector target = mean_features(model, truth, 20, derive_seed(1, {0}));
    const FitResult a = fit(ModelKind::er, target, cfg, 17);
    const FitResult b = fit(ModelKind::er, target, cfg, 17);
    CHECK(a.fitted.values == b.fitted.values);
    CHECK(a.iterations == b.iterations);
    CHECK(reference_averaging_start(a.trace, cfg.sign_change_cap) == a.averaging_start);

    const FeatureVector achieved = mean_features(model, a.fitted, 20, derive_seed(1, {1}));
    CHECK(std::abs(achieved.num_vertices() - target.num_vertices()) <= 10);
    CHECK(std::abs(achieved.avg_degree() - target.avg_degree()) <= 0.05);
}
