#include "parfit/commands.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "parfit/generators.hpp"
#include "parfit/io.hpp"

namespace parfit::cli {

namespace {

// Either a file or std::cout, selected by path.
class Output {
public:
    explicit Output(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

RunManifest manifest_for(const std::string& command, const CommonOptions& c, bool timestamp) {
    RunManifest m;
    m.command = command;
    m.model = c.model;
    m.config = c.config;
    m.seed = c.seed;
    m.samples = c.samples;
    if (timestamp) m.timestamp = utc_timestamp();
    return m;
}

void report_cleanup(const EdgeListReport& r, std::ostream& log) {
    if (r.self_loops_dropped) log << "warning: dropped " << r.self_loops_dropped << " self-loop(s)\n";
    if (r.duplicates_dropped) log << "warning: dropped " << r.duplicates_dropped << " duplicate edge(s)\n";
}

std::string summary_path(const SimulateOptions& opt) {
    if (!opt.summary_out.empty()) return opt.summary_out;
    const std::string& out = opt.common.out;
    if (out.empty() || out == "-") return "-";
    if (out.size() > 4 && out.ends_with(".csv")) return out.substr(0, out.size() - 4) + ".summary.csv";
    return out + ".summary.csv";
}

SimulationSetup setup_from(const SimulateOptions& opt) {
    SimulationSetup s;
    s.kind = opt.common.model;
    s.configurations = select_grid(opt.common.model, opt.grid, opt.grid_file);
    s.samples_per_side = opt.common.samples;
    s.config = opt.common.config;
    s.master_seed = opt.common.seed;
    s.threads = opt.common.threads;
    return s;
}

void check_common(const CommonOptions& c) {
    if (c.samples < 1) throw UsageError("--samples must be at least 1");
    if (c.config.alpha < 0) throw UsageError("--alpha must be non-negative");
    if (!(c.config.convergence_threshold > 0)) throw UsageError("--threshold must be positive");
    if (c.config.max_avg_iterations < 1) throw UsageError("--max-avg-iters must be at least 1");
    if (c.config.sign_change_cap < 0) throw UsageError("--sign-cap must be non-negative");
}

}  // namespace

std::vector<ParamVector> select_grid(ModelKind model, const std::string& grid, const std::string& grid_file) {
    if (grid == "full") return default_grids(model);
    if (grid == "desk") return desk_grid(model);
    if (grid == "file") {
        if (grid_file.empty()) throw UsageError("--grid file needs --grid-file <path>");
        std::ifstream in(grid_file);
        if (!in) throw std::runtime_error("cannot open '" + grid_file + "'");
        return read_grid_csv(in, model);
    }
    throw UsageError("unknown grid '" + grid + "' (expected full, desk or file)");
}

int cmd_generate(const GenerateOptions& opt, std::ostream& log) {
    ParamVector params;
    switch (opt.common.model) {
        case ModelKind::er: params = ParamVector::er(opt.n, opt.k); break;
        case ModelKind::chung_lu: params = ParamVector::chung_lu(opt.n, opt.k, opt.beta); break;
        case ModelKind::girg: params = ParamVector::girg(opt.n, opt.k, opt.beta, opt.temperature); break;
    }
    const ParamVector used = clamp(params);
    if (!(used.values.array() == params.values.array()).all()) {
        log << "note: parameters clamped to " << used.describe() << '\n';
    }
    const Graph g = sample_model(used, opt.common.seed);

    RunManifest m = manifest_for("generate", opt.common, /*timestamp=*/false);
    m.samples = 0;
    m.extra.emplace_back("params", used.describe());
    m.extra.emplace_back("vertices", std::to_string(g.vertex_count()));
    m.extra.emplace_back("edges", std::to_string(g.edge_count()));
    std::vector<std::string> comments = {"parfit edge list (largest connected component)"};
    for (auto& l : m.lines()) comments.push_back(std::move(l));

    Output out(opt.common.out, std::cout);
    write_edge_list(*out, g, comments);
    log << "generated " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
    return 0;
}

int cmd_measure(const MeasureOptions& opt, std::ostream& out, std::ostream& log) {
    const EdgeListReport parsed = read_edge_list_file(opt.in);
    report_cleanup(parsed, log);
    const Graph lcc = largest_connected_component(parsed.graph);
    if (lcc.edge_count() == 0) throw std::runtime_error("graph has no edges");
    if (lcc.vertex_count() != parsed.graph.vertex_count()) {
        log << "note: measuring the largest component (" << lcc.vertex_count() << " of "
            << parsed.graph.vertex_count() << " vertices)\n";
    }
    out << std::setprecision(10);
    out << "num_vertices: " << num_vertices(lcc) << '\n';
    out << "avg_degree: " << average_degree(lcc) << '\n';
    out << "heterogeneity: " << heterogeneity(lcc) << '\n';
    out << "clustering: " << avg_local_clustering(lcc) << '\n';
    const FeatureVector phi = feature_vector(lcc, opt.model);
    out << "features[" << to_string(opt.model) << "]:";
    for (Eigen::Index i = 0; i < phi.values.size(); ++i) out << ' ' << phi.values[i];
    out << '\n';
    return 0;
}

FeatureVector explicit_target(const FitOptions& opt) {
    const ModelKind kind = opt.common.model;
    if (!opt.target_n || !opt.target_k) throw UsageError("explicit target needs --target-n and --target-k");
    Eigen::VectorXd phi(parameter_count(kind));
    phi[0] = *opt.target_n;
    phi[1] = *opt.target_k;
    if (kind != ModelKind::er) {
        if (!opt.target_heterogeneity) throw UsageError("model " + std::string(to_string(kind)) + " needs --target-het");
        phi[2] = -*opt.target_heterogeneity;
    }
    if (kind == ModelKind::girg) {
        if (!opt.target_clustering) throw UsageError("model girg needs --target-clu");
        phi[3] = -*opt.target_clustering;
    }
    return {kind, std::move(phi)};
}

int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& log) {
    check_common(opt.common);
    const ModelKind kind = opt.common.model;
    const bool explicit_mode = opt.target_n || opt.target_k || opt.target_heterogeneity || opt.target_clustering;
    if (opt.in && explicit_mode) throw UsageError("give either --in or explicit --target-* values, not both");
    if (!opt.in && !explicit_mode) throw UsageError("fit needs --in <edge list> or explicit --target-* values");

    FeatureVector target;
    std::string name = opt.name;
    if (opt.in) {
        const EdgeListReport parsed = read_edge_list_file(*opt.in);
        report_cleanup(parsed, log);
        const Graph lcc = largest_connected_component(parsed.graph);
        if (lcc.edge_count() == 0) throw std::runtime_error("graph has no edges");
        target = feature_vector(lcc, kind, opt.common.config.heterogeneity_floor);
        if (name.empty()) name = *opt.in;
    } else {
        target = explicit_target(opt);
        if (name.empty()) name = "target";
    }

    const FeatureModel model = graph_model(opt.common.config.heterogeneity_floor);
    const FitResult fr = fit(kind, target, opt.common.config, derive_seed(opt.common.seed, {0, 2}), model);
    EvalRecord rec;
    rec.kind = kind;
    rec.target = target;
    rec.fitted = fr.fitted;
    rec.iterations = fr.iterations;
    rec.averaging_start = fr.averaging_start;
    rec.terminated_by = fr.terminated_by;
    rec.achieved = mean_features(model, fr.fitted, opt.common.samples, derive_seed(opt.common.seed, {0, 1}));
    rec.abs_error = (rec.achieved.values - rec.target.values).cwiseAbs();

    log << std::setprecision(6) << "fitted " << fr.fitted.describe() << " after " << fr.iterations
        << " iterations (averaging from " << fr.averaging_start << ", "
        << (fr.terminated_by == Termination::converged ? "converged" : "iteration limit") << ")\n";
    static constexpr const char* names[] = {"num_vertices", "avg_degree", "heterogeneity", "clustering"};
    for (Eigen::Index i = 0; i < target.values.size(); ++i) {
        const double sign = i < 2 ? 1.0 : -1.0;
        log << "  " << names[i] << ": target " << sign * target.values[i] << ", achieved "
            << sign * rec.achieved.values[i] << '\n';
    }

    Output csv(opt.common.out, out);
    RunManifest m = manifest_for("fit", opt.common, /*timestamp=*/true);
    write_comment_lines(*csv, m.lines());
    write_fit_header(*csv, kind);
    write_fit_row(*csv, name, rec);
    return 0;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& log) {
    check_common(opt.common);
    SimulationSetup setup = setup_from(opt);
    RunManifest m = manifest_for("simulate", opt.common, /*timestamp=*/true);
    m.grid = describe_grid(opt.common.model, opt.grid == "file" ? opt.grid_file : opt.grid);
    m.extra.emplace_back("configurations", std::to_string(setup.configurations.size()));

    Output records_out(opt.common.out, out);
    write_comment_lines(*records_out, m.lines());
    write_records_header(*records_out, opt.common.model);
    *records_out << std::flush;
    std::size_t completed = 0;
    setup.on_record = [&](const EvalRecord& rec) {
        write_record_row(*records_out, rec);
        *records_out << std::flush;
        ++completed;
        log << "[" << completed << "/" << setup.configurations.size() << "] " << rec.truth->describe()
            << (rec.ok() ? "" : " FAILED: " + *rec.error) << '\n';
    };
    const auto records = predictive_simulation(setup);

    const Aggregate agg = aggregate(records);
    Output summary_out(summary_path(opt), out);
    write_comment_lines(*summary_out, m.lines());
    write_summary_csv(*summary_out, agg);
    return agg.failed == 0 ? 0 : 1;
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& log) {
    if (opt.values.empty()) throw UsageError("sweep needs at least one value (--values)");
    check_common(opt.base.common);
    for (double v : opt.values) {
        if (opt.variable == SweepVariable::alpha && v < 0) throw UsageError("alpha values must be non-negative");
        if (opt.variable == SweepVariable::threshold && !(v > 0)) throw UsageError("threshold values must be positive");
    }
    SimulationSetup setup = setup_from(opt.base);
    RunManifest m = manifest_for("sweep", opt.base.common, /*timestamp=*/true);
    m.grid = describe_grid(opt.base.common.model, opt.base.grid == "file" ? opt.base.grid_file : opt.base.grid);
    std::ostringstream vs;
    vs << std::setprecision(10);
    for (std::size_t i = 0; i < opt.values.size(); ++i) vs << (i ? " " : "") << opt.values[i];
    m.extra.emplace_back("variable", std::string(to_string(opt.variable)));
    m.extra.emplace_back("values", vs.str());

    const SweepReport report = sweep(opt.variable, opt.values, setup);
    for (const auto& row : report.rows) {
        log << to_string(opt.variable) << '=' << row.value << ": mean iterations " << row.mean_iterations << '\n';
    }
    Output csv(opt.base.common.out, out);
    write_comment_lines(*csv, m.lines());
    write_sweep_csv(*csv, report);
    return 0;
}

}  // namespace parfit::cli
