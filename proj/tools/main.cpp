#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "causalmcmc/harness.hpp"
#include "causalmcmc/io.hpp"

namespace {

using namespace causalmcmc;

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& warning : warnings) std::cerr << "warning: " << warning << "\n";
}

int run_simulate(const std::string& dag, const std::string& design, double sigma,
                 std::uint64_t seed, const std::string& out) {
    const WeightedDag structure = resolve_dag(dag);
    const DesignSpec spec = resolve_design(design, structure.node_count(), 0);
    const SimulationModel model =
        sample_parameters(structure.node_count(), structure.edges(), sigma, seed);
    const Dataset data = simulate(model.params, model.order, spec.design, seed);

    std::filesystem::create_directories(out);
    write_model(model, out);
    write_dataset(data, out + "/values.tsv", out + "/interventions.tsv");
    write_design_json(spec.design, out + "/design.json");
    std::cout << "simulated " << data.sample_count() << " samples of " << data.node_count()
              << " genes (" << spec.label << ", sigma=" << format_double(sigma) << ") into " << out
              << "\n";
    return 0;
}

int run_infer(const std::string& values, const std::string& interventions,
              const std::string& method, const std::string& chain_config_path, std::uint64_t seed,
              bool seed_given, bool pinna_simple, const std::string& out) {
    InferOptions options;
    options.method = method_from_name(method);
    options.pinna_use_simple = pinna_simple;
    options.out_dir = out;
    if (!chain_config_path.empty())
        options.chain = chain_config_from_json(read_json_file(chain_config_path));
    if (seed_given) options.chain.seed = seed;

    const InferOutcome outcome = infer(values, interventions, options);
    print_warnings(outcome.warnings);
    std::cout << "wrote " << out << "/effects.tsv (" << method_label(options.method) << ")\n";
    return 0;
}

int run_experiment_cmd(const std::string& config_path, const CLI::App* cmd, std::uint64_t seed,
                       int workers, const std::string& out) {
    ExperimentConfig config = ExperimentConfig::from_json_file(config_path);
    if (cmd->count("--seed") > 0) config.seed = seed;
    if (cmd->count("--workers") > 0) config.workers = workers;
    if (cmd->count("--out") > 0) config.out_dir = out;

    run_experiment(config);
    std::cout << read_text_file(config.out_dir + "/aggregate.tsv");
    std::cout << "experiment written to " << config.out_dir << "\n";
    return 0;
}

int run_report(const std::string& dir) {
    write_report(dir);
    std::cout << "report written to " << dir << "/report\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal gene-network effects from observational and knock-out data"};
    app.require_subcommand(1);

    std::string dag = "standin10";
    std::string design = "mixed";
    double sigma = 0.1;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string out;
    std::string values_path, interventions_path;
    std::string method = "mallows";
    std::string config_path;
    bool pinna_simple = false;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Draw model parameters and simulate an intervention design");
    simulate->add_option("--dag", dag, "Built-in structure name (standin10) or DAG file path");
    simulate->add_option("--design", design,
                         "obs | mixed | partial | multiko | custom:<design.json>");
    simulate->add_option("--sigma", sigma, "Residual standard deviation");
    simulate->add_option("--seed", seed, "Root seed");
    simulate->add_option("--out", out, "Output directory")->required();

    CLI::App* infer_cmd =
        app.add_subcommand("infer", "Estimate causal effects for one dataset");
    infer_cmd->add_option("--values", values_path, "Values TSV (header G1..Gp)")->required();
    infer_cmd->add_option("--interventions", interventions_path, "Interventions TSV")->required();
    infer_cmd->add_option("--method", method, "mallows | uniform | pinna");
    infer_cmd->add_option("--config", config_path, "Chain configuration JSON");
    infer_cmd->add_option("--seed", seed, "Chain seed (overrides the config file)");
    infer_cmd->add_flag("--pinna-simple", pinna_simple,
                        "Rank by simple deviations instead of z-scores");
    infer_cmd->add_option("--out", out, "Output directory")->required();

    CLI::App* experiment =
        app.add_subcommand("experiment", "Run a replicated simulation study from a config");
    experiment->add_option("--config", config_path, "Experiment configuration JSON")->required();
    experiment->add_option("--seed", seed, "Override the config root seed");
    experiment->add_option("--workers", workers,
                           "Concurrent replicates (default: CAUSAL_MCMC_WORKERS or 1)");
    experiment->add_option("--out", out, "Override the config output directory");

    CLI::App* report =
        app.add_subcommand("report", "Summarize an experiment directory into report/");
    report->add_option("--out", out, "Experiment directory (as written by `experiment`)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(dag, design, sigma, seed, out);
        if (infer_cmd->parsed())
            return run_infer(values_path, interventions_path, method, config_path, seed,
                             infer_cmd->count("--seed") > 0, pinna_simple, out);
        if (experiment->parsed())
            return run_experiment_cmd(config_path, experiment, seed, workers, out);
        if (report->parsed()) return run_report(out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
