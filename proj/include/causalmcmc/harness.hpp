#ifndef CAUSALMCMC_HARNESS_HPP_
#define CAUSALMCMC_HARNESS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "causalmcmc/mcmc.hpp"
#include "causalmcmc/metrics.hpp"
#include "causalmcmc/simulator.hpp"

namespace causalmcmc {

enum class Method { kMallows, kUniform, kPinna };

Method method_from_name(const std::string& name);  // mallows | uniform | pinna
const char* method_name(Method method);            // token used in flags and paths
const char* method_label(Method method);           // table label, e.g. "MCMC-Mallows"

// A design to simulate, resolved from a config token: a built-in name (obs,
// mixed, partial, multiko) or "custom:<path>" pointing at a design JSON.
struct DesignSpec {
    std::string token;
    std::string dir_name;
    std::string label;
    InterventionDesign design;
};

DesignSpec resolve_design(const std::string& token, int node_count, int index);

// "standin10" or a DAG file path. Experiments reuse only the edge structure;
// weights are redrawn per replicate.
WeightedDag resolve_dag(const std::string& source);

// Full experiment description; serialized as config.json in the output
// directory. The chain seed field is ignored: chain seeds derive from the
// root seed, replicate, design, and method, so every stage is independently
// reproducible and replicates are isolated.
struct ExperimentConfig {
    std::string dag = "standin10";  // built-in structure or DAG file path
    double sigma = 0.1;
    std::vector<std::string> designs = {"mixed"};
    std::vector<Method> methods = {Method::kMallows};
    int replicates = 1;
    ChainConfig chain;
    std::string out_dir;
    std::uint64_t seed = 0;
    int workers = 0;  // 0: CAUSAL_MCMC_WORKERS, else 1
    bool pinna_use_simple = false;  // rank by the simple deviations, not zscores
    double zero_tol = kZeroTol;

    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_json_file(const std::string& path);
};

// One method's outcome on one replicate of one design.
struct MethodOutcome {
    bool skipped = false;
    std::string skip_reason;
    std::vector<std::string> warnings;
    EvaluationReport report;
    Eigen::MatrixXd effects;
    // Chain-only extras.
    Eigen::MatrixXd order_distribution;
    double acceptance_rate = 0.0;
    std::optional<double> chosen_eta;
    double best_loglik = 0.0;
};

struct ExperimentResult {
    std::vector<DesignSpec> designs;
    std::vector<Method> methods;
    // outcomes[design][method][replicate]
    std::vector<std::vector<std::vector<MethodOutcome>>> outcomes;

    const MethodOutcome& outcome(int design, Method method, int replicate) const;
};

// Simulates config.replicates datasets per design (parameters redrawn each
// replicate), runs every requested method, evaluates against the true total
// effects, and writes the experiment directory:
//   config.json, aggregate.tsv, aggregate_raw.tsv,
//   order_distribution_<design>_<method>.tsv,
//   replicates/rNNN/{model.dag, params.json, true_effects.tsv,
//     <design>/{values.tsv, interventions.tsv,
//       <method>/{effects.tsv, report.json, chain/...  or skip.json}}}
// Replicates run concurrently up to the worker count; outputs are identical
// for any worker count. Pinna on a design without a knock-out for every gene
// is skipped with a note, not an error.
ExperimentResult run_experiment(const ExperimentConfig& config);

int resolve_workers(int requested);

struct InferOptions {
    Method method = Method::kMallows;
    ChainConfig chain;
    bool pinna_use_simple = false;
    std::string out_dir;  // empty: nothing is written
};

struct InferOutcome {
    Eigen::MatrixXd effects;
    std::vector<std::string> warnings;
};

// Single-dataset entry point for externally supplied files. Writes
// effects.tsv, infer.json, and for chain methods the chain/ directory.
InferOutcome infer(const std::string& values_path, const std::string& interventions_path,
                   const InferOptions& options);

// Reads a run_experiment directory and emits <dir>/report/: report.md,
// table1.tsv, roc/pr curve TSVs, and order-distribution heatmap TSVs.
void write_report(const std::string& experiment_dir);

// "0.948 (0.03)": mean and standard deviation at three significant digits.
std::string format_mean_sd(double mean, double sd);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_HARNESS_HPP_
