// parfit: fit random graph model parameters to target network features.
//
//   parfit generate --model girg --n 2000 --k 8 --beta 3 --temperature 0.5 --seed 7 --out g.txt
//   parfit measure  --in g.txt --model girg
//   parfit fit      --in g.txt --model girg --out fit.csv
//   parfit fit      --model er --target-n 1000 --target-k 5
//   parfit simulate --model er --grid desk --samples 20 --out er.csv
//   parfit sweep    --model girg --variable alpha --values 0,0.2,0.4,0.6,0.8,1 --out alpha.csv

#include <CLI11.hpp>

#include <iostream>

#include "parfit/commands.hpp"

namespace {

using namespace parfit;

void add_model(CLI::App* app, ModelKind& model) {
    app->add_option_function<std::string>(
           "--model", [&model](const std::string& name) { model = parse_model_kind(name); }, "random graph model")
        ->check(CLI::IsMember({"er", "cl", "girg"}))
        ->default_str("girg");
}

void add_common(CLI::App* app, cli::CommonOptions& c, bool fitting) {
    add_model(app, c.model);
    app->add_option("--seed", c.seed, "master seed")->capture_default_str();
    app->add_option("--out", c.out, "output path (default: stdout)");
    if (!fitting) return;
    app->add_option("--samples", c.samples, "samples per evaluation side")->capture_default_str();
    app->add_option("--alpha", c.config.alpha, "gain exponent, a_i = (i+1)^-alpha")->capture_default_str();
    app->add_option("--threshold", c.config.convergence_threshold, "relative-change convergence threshold")
        ->capture_default_str();
    app->add_option("--max-avg-iters", c.config.max_avg_iterations, "maximum averaging iterations")
        ->capture_default_str();
    app->add_option("--sign-cap", c.config.sign_change_cap, "latest iteration at which averaging starts")
        ->capture_default_str();
    app->add_option("--threads", c.threads, "worker threads (0 = all cores)")->capture_default_str();
}

void add_grid(CLI::App* app, cli::SimulateOptions& s) {
    app->add_option("--grid", s.grid, "configuration grid")
        ->check(CLI::IsMember({"full", "desk", "file"}))
        ->capture_default_str();
    app->add_option("--grid-file", s.grid_file, "CSV with columns n,k[,beta[,temperature]] for --grid file");
    app->add_option("--summary-out", s.summary_out, "summary CSV (default: <out>.summary.csv)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterative stochastic-approximation fitting of random graph model parameters"};
    app.require_subcommand(1);

    cli::GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "sample a graph (largest component) as an edge list");
    add_common(generate, gen.common, false);
    generate->add_option("--n", gen.n, "number of vertices")->capture_default_str();
    generate->add_option("--k", gen.k, "average degree")->capture_default_str();
    generate->add_option("--beta", gen.beta, "power-law exponent (cl, girg)")->capture_default_str();
    generate->add_option("--temperature", gen.temperature, "temperature (girg)")->capture_default_str();

    cli::MeasureOptions meas;
    auto* measure = app.add_subcommand("measure", "report the features of an edge list's largest component");
    measure->add_option("--in", meas.in, "edge list")->required()->check(CLI::ExistingFile);
    add_model(measure, meas.model);

    cli::FitOptions fitopt;
    std::string fit_in;
    auto* fit = app.add_subcommand("fit", "fit model parameters to an edge list or explicit target features");
    add_common(fit, fitopt.common, true);
    auto* fit_in_opt = fit->add_option("--in", fit_in, "edge list")->check(CLI::ExistingFile);
    fit->add_option("--target-n", fitopt.target_n, "target number of vertices");
    fit->add_option("--target-k", fitopt.target_k, "target average degree");
    fit->add_option("--target-het", fitopt.target_heterogeneity, "target heterogeneity (cl, girg)");
    fit->add_option("--target-clu", fitopt.target_clustering, "target clustering coefficient (girg)");
    fit->add_option("--name", fitopt.name, "graph name for the CSV row");

    cli::SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "predictive simulation over a parameter grid");
    add_common(simulate, sim.common, true);
    add_grid(simulate, sim);

    cli::SweepOptions sw;
    std::string variable = "alpha";
    auto* sweep = app.add_subcommand("sweep", "predictive simulation for a range of alpha or threshold values");
    add_common(sweep, sw.base.common, true);
    add_grid(sweep, sw.base);
    sweep->add_option("--variable", variable, "swept setting")
        ->check(CLI::IsMember({"alpha", "threshold"}))
        ->capture_default_str();
    sweep->add_option("--values", sw.values, "comma-separated values")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cli::cmd_generate(gen, std::cerr);
        if (measure->parsed()) return cli::cmd_measure(meas, std::cout, std::cerr);
        if (fit->parsed()) {
            if (fit_in_opt->count() > 0) fitopt.in = fit_in;
            return cli::cmd_fit(fitopt, std::cout, std::cerr);
        }
        if (simulate->parsed()) return cli::cmd_simulate(sim, std::cout, std::cerr);
        if (sweep->parsed()) {
            sw.variable = parse_sweep_variable(variable);
            return cli::cmd_sweep(sw, std::cout, std::cerr);
        }
    } catch (const cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
