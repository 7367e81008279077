#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parfit/fit.hpp"
#include "parfit/harness.hpp"

namespace parfit::cli {

/// Bad or missing command-line input; the CLI exits with status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CommonOptions {
    ModelKind model = ModelKind::girg;
    Seed seed = 1;
    int samples = 50;
    FitConfig config;
    std::string out;      ///< empty or "-" means stdout
    unsigned threads = 0;
};

struct GenerateOptions {
    CommonOptions common;
    double n = 1000;
    double k = 5;
    double beta = 3.0;
    double temperature = 0.5;
};

struct MeasureOptions {
    std::string in;
    ModelKind model = ModelKind::girg;
};

struct FitOptions {
    CommonOptions common;
    std::optional<std::string> in;
    std::optional<double> target_n;
    std::optional<double> target_k;
    std::optional<double> target_heterogeneity;
    std::optional<double> target_clustering;
    std::string name;     ///< graph column of the CSV row; defaults to the input path
};

struct SimulateOptions {
    CommonOptions common;
    std::string grid = "desk";   ///< full, desk or file
    std::string grid_file;
    std::string summary_out;     ///< defaults to <out>.summary.csv
};

struct SweepOptions {
    SimulateOptions base;
    SweepVariable variable = SweepVariable::alpha;
    std::vector<double> values;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& log);
int cmd_measure(const MeasureOptions& opt, std::ostream& out, std::ostream& log);
int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& log);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& log);
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& log);

/// Target features for an explicit fit; throws UsageError if a feature the
/// model needs is missing.
FeatureVector explicit_target(const FitOptions& opt);

std::vector<ParamVector> select_grid(ModelKind model, const std::string& grid, const std::string& grid_file);

}  // namespace parfit::cli
