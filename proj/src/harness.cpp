#include "parfit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "parfit/generators.hpp"
#include "parfit/stats.hpp"

namespace parfit {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return v;
}

std::vector<double> geomspace(double lo, double hi, int count) {
    auto v = linspace(std::log(lo), std::log(hi), count);
    for (auto& x : v) x = std::exp(x);
    return v;
}

double round_to(double x, double digits) {
    const double f = std::pow(10.0, digits);
    return std::round(x * f) / f;
}

// Full-scale axes.
constexpr int er_n_count = 9, er_k_count = 19;
constexpr int cl_n_count = 5, cl_k_count = 10, cl_beta_count = 10;
constexpr int girg_k_count = 5, girg_beta_count = 10, girg_t_count = 10;

EvalRecord evaluate(const SimulationSetup& setup, const FeatureModel& model, std::size_t index) {
    const ParamVector& truth = setup.configurations[index];
    EvalRecord rec;
    rec.index = index;
    rec.kind = setup.kind;
    rec.truth = truth;
    const auto start = std::chrono::steady_clock::now();
    try {
        rec.target = mean_features(model, truth, setup.samples_per_side, derive_seed(setup.master_seed, {index, 0}));
        const FitResult fr = fit(setup.kind, rec.target, setup.config, derive_seed(setup.master_seed, {index, 2}), model);
        rec.fitted = fr.fitted;
        rec.iterations = fr.iterations;
        rec.averaging_start = fr.averaging_start;
        rec.terminated_by = fr.terminated_by;
        rec.achieved = mean_features(model, fr.fitted, setup.samples_per_side, derive_seed(setup.master_seed, {index, 1}));
        rec.abs_error = (rec.achieved.values - rec.target.values).cwiseAbs();
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

FeatureVector mean_features(const FeatureModel& model, const ParamVector& params, int samples, Seed base) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(parameter_count(params.kind));
    for (int r = 0; r < samples; ++r) {
        sum += model(params, derive_seed(base, {static_cast<std::uint64_t>(r)})).values;
    }
    return {params.kind, sum / samples};
}

std::vector<EvalRecord> predictive_simulation(const SimulationSetup& setup) {
    if (setup.samples_per_side < 1) throw std::invalid_argument("samples_per_side must be at least 1");
    for (const auto& c : setup.configurations) {
        if (c.kind != setup.kind) throw std::invalid_argument("configuration of the wrong model kind: " + c.describe());
    }
    const FeatureModel model = setup.model ? setup.model : graph_model(setup.config.heterogeneity_floor);
    const std::size_t count = setup.configurations.size();
    std::vector<EvalRecord> records(count);

    std::mutex mutex;
    std::vector<bool> done(count, false);
    std::size_t flushed = 0;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            EvalRecord rec = evaluate(setup, model, i);
            std::lock_guard lock(mutex);
            records[i] = std::move(rec);
            done[i] = true;
            while (flushed < count && done[flushed]) {
                if (setup.on_record) setup.on_record(records[flushed]);
                ++flushed;
            }
        }
    };
    unsigned threads = setup.threads ? setup.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return records;
}

Aggregate aggregate(std::span<const EvalRecord> records) {
    std::vector<const EvalRecord*> ok;
    Aggregate agg;
    for (const auto& r : records) {
        if (r.ok()) ok.push_back(&r);
        else ++agg.failed;
    }
    agg.records = ok.size();
    if (ok.size() < 2) throw std::invalid_argument("aggregate needs at least two successful records");
    agg.kind = ok.front()->kind;
    const Eigen::Index p = parameter_count(agg.kind);
    const auto m = static_cast<Eigen::Index>(ok.size());
    Eigen::MatrixXd target(m, p), achieved(m, p);
    double iterations = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& r = *ok[static_cast<std::size_t>(i)];
        if (r.kind != agg.kind) throw std::invalid_argument("aggregate over mixed model kinds");
        target.row(i) = r.target.values.transpose();
        achieved.row(i) = r.achieved.values.transpose();
        iterations += r.iterations;
    }
    for (Eigen::Index f = 0; f < p; ++f) {
        FeatureSummary s;
        s.pearson = pearson(target.col(f), achieved.col(f));
        s.mae = mae(target.col(f), achieved.col(f));
        s.p90_abs_error = percentile((target.col(f) - achieved.col(f)).cwiseAbs(), 0.9);
        agg.features.push_back(s);
    }
    agg.mean_iterations = iterations / static_cast<double>(m);
    return agg;
}

std::string_view to_string(SweepVariable v) { return v == SweepVariable::alpha ? "alpha" : "threshold"; }

SweepVariable parse_sweep_variable(std::string_view name) {
    if (name == "alpha") return SweepVariable::alpha;
    if (name == "threshold") return SweepVariable::threshold;
    throw std::invalid_argument("unknown sweep variable '" + std::string(name) + "' (expected alpha or threshold)");
}

SweepReport sweep(SweepVariable variable, std::span<const double> values, const SimulationSetup& base) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    SweepReport report;
    report.variable = variable;
    report.kind = base.kind;
    for (double value : values) {
        SimulationSetup setup = base;
        (variable == SweepVariable::alpha ? setup.config.alpha : setup.config.convergence_threshold) = value;
        auto records = predictive_simulation(setup);
        SweepRow row;
        row.value = value;
        row.mae = Eigen::VectorXd::Zero(parameter_count(base.kind));
        std::size_t ok = 0;
        for (const auto& r : records) {
            if (!r.ok()) {
                ++row.failed;
                continue;
            }
            row.mae += r.abs_error;
            row.mean_iterations += r.iterations;
            ++ok;
        }
        if (ok > 0) {
            row.mae /= static_cast<double>(ok);
            row.mean_iterations /= static_cast<double>(ok);
        }
        report.rows.push_back(std::move(row));
        report.records.push_back(std::move(records));
    }
    return report;
}

EvalRecord fit_real_network(const Graph& g, const FitConfig& config, int samples, Seed master_seed,
                            const FeatureModel& model_in) {
    if (g.edge_count() == 0) throw std::invalid_argument("network has no edges");
    const FeatureModel model = model_in ? model_in : graph_model(config.heterogeneity_floor);
    const auto start = std::chrono::steady_clock::now();
    EvalRecord rec;
    rec.kind = ModelKind::girg;
    rec.target = feature_vector(largest_connected_component(g), ModelKind::girg, config.heterogeneity_floor);
    const FitResult fr = fit(ModelKind::girg, rec.target, config, derive_seed(master_seed, {0, 2}), model);
    rec.fitted = fr.fitted;
    rec.iterations = fr.iterations;
    rec.averaging_start = fr.averaging_start;
    rec.terminated_by = fr.terminated_by;
    rec.achieved = mean_features(model, fr.fitted, samples, derive_seed(master_seed, {0, 1}));
    rec.abs_error = (rec.achieved.values - rec.target.values).cwiseAbs();
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<ParamVector> default_grids(ModelKind kind) {
    std::vector<ParamVector> grid;
    switch (kind) {
        case ModelKind::er:
            for (double n : linspace(1000, 10000, er_n_count))
                for (double k : linspace(1.5, 10.5, er_k_count)) grid.push_back(ParamVector::er(std::round(n), k));
            break;
        case ModelKind::chung_lu:
            for (double n : linspace(1000, 10000, cl_n_count))
                for (double k : linspace(2, 10, cl_k_count))
                    for (double beta : geomspace(2.1, 25, cl_beta_count))
                        grid.push_back(ParamVector::chung_lu(n, round_to(k, 3), round_to(beta, 3)));
            break;
        case ModelKind::girg:
            for (double k : linspace(2, 10, girg_k_count))
                for (double beta : geomspace(2.1, 25, girg_beta_count))
                    for (double t : linspace(0.01, limits::max_temperature, girg_t_count))
                        grid.push_back(ParamVector::girg(10000, k, round_to(beta, 3), round_to(t, 4)));
            break;
    }
    return grid;
}

std::vector<ParamVector> desk_grid(ModelKind kind) {
    std::vector<ParamVector> grid;
    switch (kind) {
        case ModelKind::er:
            for (double n : {500.0, 1000.0, 2000.0})
                for (double k : {2.0, 3.0, 5.0, 8.0, 12.0}) grid.push_back(ParamVector::er(n, k));
            break;
        case ModelKind::chung_lu:
            for (double n : {1000.0, 2000.0})
                for (double k : {3.0, 6.0, 10.0})
                    for (double beta : {2.5, 3.0, 5.0}) grid.push_back(ParamVector::chung_lu(n, k, beta));
            break;
        case ModelKind::girg:
            for (double k : {4.0, 8.0})
                for (double beta : {2.5, 3.0, 7.0})
                    for (double t : {0.2, 0.5, 0.8}) grid.push_back(ParamVector::girg(2000, k, beta, t));
            break;
    }
    return grid;
}

std::string describe_grid(ModelKind kind, std::string_view which) {
    std::ostringstream os;
    if (which == "desk") {
        switch (kind) {
            case ModelKind::er: os << "desk er: n in {500,1000,2000} x k in {2,3,5,8,12}"; break;
            case ModelKind::chung_lu: os << "desk cl: n in {1000,2000} x k in {3,6,10} x beta in {2.5,3,5}"; break;
            case ModelKind::girg: os << "desk girg: n=2000 x k in {4,8} x beta in {2.5,3,7} x T in {0.2,0.5,0.8}"; break;
        }
    } else if (which == "full") {
        switch (kind) {
            case ModelKind::er: os << "full er: n linspace(1000,10000,9) rounded x k linspace(1.5,10.5,19)"; break;
            case ModelKind::chung_lu:
                os << "full cl: n linspace(1000,10000,5) x k linspace(2,10,10) x beta geomspace(2.1,25,10)";
                break;
            case ModelKind::girg:
                os << "full girg: n=10000 x k linspace(2,10,5) x beta geomspace(2.1,25,10) x T linspace(0.01,0.999,10)";
                break;
        }
    } else {
        os << which;
    }
    return os.str();
}

}  // namespace parfit
