#include "causalmcmc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "causalmcmc/io.hpp"
#include "causalmcmc/pinna.hpp"
#include "causalmcmc/seeding.hpp"

namespace fs = std::filesystem;

namespace causalmcmc {

namespace {

constexpr int kMetricCount = 4;
const char* const kMetricNames[kMetricCount] = {"AUROC", "AUPRC", "Spearman", "MSE"};

double metric_value(const EvaluationReport& report, int metric) {
    switch (metric) {
        case 0: return report.auroc;
        case 1: return report.auprc;
        case 2: return report.spearman;
        default: return report.mse;
    }
}

std::string replicate_dir_name(int replicate) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "r%03d", replicate + 1);
    return buffer;
}

std::string design_dir_name(const std::string& token, int index) {
    if (token.rfind("custom:", 0) == 0) return "custom" + std::to_string(index + 1);
    return token;
}

std::string design_label_for_token(const std::string& token, int index) {
    if (token.rfind("custom:", 0) == 0) return "Custom " + std::to_string(index + 1);
    return builtin_design_label(builtin_design_from_name(token));
}

nlohmann::json json_or_null(double value) {
    return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json();
}

double double_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

nlohmann::json report_to_json(const MethodOutcome& outcome, Method method) {
    nlohmann::json j{
        {"method", method_name(method)},
        {"auroc", json_or_null(outcome.report.auroc)},
        {"auprc", json_or_null(outcome.report.auprc)},
        {"spearman", outcome.report.spearman},
        {"mse", outcome.report.mse},
        {"n_pairs", outcome.report.n_pairs},
        {"degenerate_reason", outcome.report.degenerate_reason},
        {"spearman_constant", outcome.report.spearman_constant},
        {"warnings", outcome.warnings},
    };
    if (method != Method::kPinna) {
        j["acceptance_rate"] = outcome.acceptance_rate;
        j["chosen_eta"] = outcome.chosen_eta ? nlohmann::json(*outcome.chosen_eta)
                                             : nlohmann::json();
        j["best_loglik"] = outcome.best_loglik;
    }
    return j;
}

EvaluationReport report_from_json(const nlohmann::json& j) {
    EvaluationReport report;
    report.auroc = double_or_nan(j.at("auroc"));
    report.auprc = double_or_nan(j.at("auprc"));
    report.spearman = j.at("spearman").get<double>();
    report.mse = j.at("mse").get<double>();
    report.n_pairs = j.at("n_pairs").get<int>();
    report.degenerate_reason = j.at("degenerate_reason").get<std::string>();
    report.spearman_constant = j.at("spearman_constant").get<bool>();
    return report;
}

struct MetricStats {
    double mean = 0.0;
    double sd = 0.0;
    int n = 0;
};

// Mean and population standard deviation over the replicates where the
// method ran and the metric is finite.
MetricStats metric_stats(const std::vector<std::optional<EvaluationReport>>& reports, int metric) {
    MetricStats stats;
    double sum = 0.0;
    for (const auto& report : reports) {
        if (!report) continue;
        const double value = metric_value(*report, metric);
        if (!std::isfinite(value)) continue;
        sum += value;
        stats.n += 1;
    }
    if (stats.n == 0) return stats;
    stats.mean = sum / stats.n;
    double sq = 0.0;
    for (const auto& report : reports) {
        if (!report) continue;
        const double value = metric_value(*report, metric);
        if (!std::isfinite(value)) continue;
        sq += (value - stats.mean) * (value - stats.mean);
    }
    stats.sd = std::sqrt(sq / stats.n);
    return stats;
}

// reports[design][method][replicate]; skipped replicates are nullopt.
using ReportGrid = std::vector<std::vector<std::vector<std::optional<EvaluationReport>>>>;

std::string aggregate_table(const std::vector<std::string>& design_labels,
                            const std::vector<std::string>& method_labels,
                            const ReportGrid& reports, char sep) {
    std::ostringstream out;
    out << "setting" << sep << "criterion";
    for (const std::string& label : method_labels) out << sep << label;
    out << "\n";
    for (std::size_t d = 0; d < design_labels.size(); ++d) {
        for (int metric = 0; metric < kMetricCount; ++metric) {
            out << design_labels[d] << sep << kMetricNames[metric];
            for (std::size_t m = 0; m < method_labels.size(); ++m) {
                const MetricStats stats = metric_stats(reports[d][m], metric);
                out << sep << (stats.n > 0 ? format_mean_sd(stats.mean, stats.sd) : "---");
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string aggregate_raw_table(const std::vector<std::string>& design_names,
                                const std::vector<Method>& methods, const ReportGrid& reports) {
    std::ostringstream out;
    out << "design\tmethod\tcriterion\tmean\tsd\tn\n";
    for (std::size_t d = 0; d < design_names.size(); ++d) {
        for (std::size_t m = 0; m < methods.size(); ++m) {
            for (int metric = 0; metric < kMetricCount; ++metric) {
                const MetricStats stats = metric_stats(reports[d][m], metric);
                const double nan = std::numeric_limits<double>::quiet_NaN();
                out << design_names[d] << "\t" << method_name(methods[m]) << "\t"
                    << kMetricNames[metric] << "\t"
                    << format_double(stats.n > 0 ? stats.mean : nan) << "\t"
                    << format_double(stats.n > 0 ? stats.sd : nan) << "\t" << stats.n << "\n";
            }
        }
    }
    return out.str();
}

void append_observational_warning(const Dataset& data, std::vector<std::string>* warnings) {
    if (!data.has_any_intervention())
        warnings->push_back(
            "no interventions present: observational data are uninformative for the causal "
            "ordering, so effect estimates average over orderings");
}

// chain_dir non-empty: the full ChainResult directory is written while the
// result is still in memory (the trace is not retained in the outcome).
MethodOutcome run_chain_method(const Dataset& data, const Eigen::MatrixXd& truth, Method method,
                               ChainConfig chain, std::uint64_t seed, double zero_tol,
                               const std::string& chain_dir) {
    chain.mode = method == Method::kMallows ? ChainMode::kMallows : ChainMode::kUniform;
    chain.seed = seed;
    MethodOutcome outcome;
    append_observational_warning(data, &outcome.warnings);
    const ChainResult result = run_chain(data, chain);
    outcome.effects = result.posterior_effects;
    outcome.report = evaluate(outcome.effects, truth, zero_tol);
    outcome.order_distribution = result.order_distribution;
    outcome.acceptance_rate = result.acceptance_rate;
    outcome.chosen_eta = result.chosen_eta;
    outcome.best_loglik = result.best_loglik;
    if (!chain_dir.empty()) {
        fs::create_directories(chain_dir);
        write_chain_result(result, chain, chain_dir);
    }
    return outcome;
}

MethodOutcome run_pinna_method(const Dataset& data, const Eigen::MatrixXd& truth, bool use_simple,
                               double zero_tol) {
    MethodOutcome outcome;
    const DesignCheck check = pinna_requires_full_design(data);
    if (!check.full) {
        outcome.skipped = true;
        outcome.skip_reason = "requires full single-knock-out design";
        return outcome;
    }
    const DeviationMatrices scores = pinna_scores(data);
    outcome.effects = use_simple ? scores.simple : scores.zscore;
    outcome.report = evaluate(outcome.effects, truth, zero_tol);
    for (int gene : scores.zero_variance_genes)
        outcome.warnings.push_back("gene " + std::to_string(gene + 1) +
                                   " has zero wild-type variance; sentinel z-scores used");
    return outcome;
}

void write_method_outcome(const MethodOutcome& outcome, Method method, const Dataset& data,
                          const std::string& dir) {
    fs::create_directories(dir);
    if (outcome.skipped) {
        const DesignCheck check = pinna_requires_full_design(data);
        nlohmann::json missing = nlohmann::json::array();
        for (int gene : check.missing_genes) missing.push_back(gene + 1);
        write_json_file(dir + "/skip.json", {{"skipped", true},
                                             {"reason", outcome.skip_reason},
                                             {"missing_genes", missing}});
        return;
    }
    write_matrix_tsv(outcome.effects, dir + "/effects.tsv");
    write_json_file(dir + "/report.json", report_to_json(outcome, method));
}

}  // namespace

Method method_from_name(const std::string& name) {
    if (name == "mallows") return Method::kMallows;
    if (name == "uniform") return Method::kUniform;
    if (name == "pinna") return Method::kPinna;
    throw std::invalid_argument("unknown method '" + name +
                                "' (expected mallows, uniform, or pinna)");
}

const char* method_name(Method method) {
    switch (method) {
        case Method::kMallows: return "mallows";
        case Method::kUniform: return "uniform";
        default: return "pinna";
    }
}

const char* method_label(Method method) {
    switch (method) {
        case Method::kMallows: return "MCMC-Mallows";
        case Method::kUniform: return "MCMC-uniform";
        default: return "Pinna";
    }
}

WeightedDag resolve_dag(const std::string& source) {
    if (source == "standin10") return standin_dag();
    return read_dag(source);
}

DesignSpec resolve_design(const std::string& token, int node_count, int index) {
    DesignSpec spec;
    spec.token = token;
    spec.dir_name = design_dir_name(token, index);
    spec.label = design_label_for_token(token, index);
    if (token.rfind("custom:", 0) == 0) {
        spec.design = read_design_json(token.substr(7));
    } else {
        spec.design = builtin_design(builtin_design_from_name(token), node_count);
    }
    spec.design.validate(node_count);
    return spec;
}

void ExperimentConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (methods.empty()) throw std::invalid_argument("config: methods must be non-empty");
    if (designs.empty()) throw std::invalid_argument("config: designs must be non-empty");
    if (!(sigma >= 0.0)) throw std::invalid_argument("config: sigma must be >= 0");
    if (!(zero_tol >= 0.0)) throw std::invalid_argument("config: zero_tol must be >= 0");
    if (dag != "standin10" && !fs::exists(dag))
        throw std::invalid_argument("config: dag file '" + dag + "' does not exist");
    for (const std::string& token : designs) {
        if (token.rfind("custom:", 0) == 0) {
            const std::string path = token.substr(7);
            if (!fs::exists(path))
                throw std::invalid_argument("config: design file '" + path + "' does not exist");
        } else {
            builtin_design_from_name(token);  // throws on unknown names
        }
    }
    chain.validate();
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json method_names = nlohmann::json::array();
    for (Method m : methods) method_names.push_back(method_name(m));
    return nlohmann::json{
        {"dag", dag},
        {"sigma", sigma},
        {"designs", designs},
        {"methods", method_names},
        {"replicates", replicates},
        {"chain", chain_config_to_json(chain)},
        {"out", out_dir},
        {"seed", seed},
        {"workers", workers},
        {"pinna_use_simple", pinna_use_simple},
        {"zero_tol", zero_tol},
    };
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {
        "dag",  "sigma", "design",  "designs",          "methods",  "replicates",
        "chain", "out",  "seed",    "workers",          "pinna_use_simple", "zero_tol"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    ExperimentConfig config;
    if (j.contains("dag")) config.dag = j["dag"].get<std::string>();
    if (j.contains("sigma")) config.sigma = j["sigma"].get<double>();
    if (j.contains("designs")) config.designs = j["designs"].get<std::vector<std::string>>();
    if (j.contains("design")) config.designs = {j["design"].get<std::string>()};
    if (j.contains("methods")) {
        config.methods.clear();
        for (const auto& name : j["methods"].get<std::vector<std::string>>())
            config.methods.push_back(method_from_name(name));
    }
    if (j.contains("replicates")) config.replicates = j["replicates"].get<int>();
    if (j.contains("chain")) config.chain = chain_config_from_json(j["chain"]);
    if (j.contains("out")) config.out_dir = j["out"].get<std::string>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) config.workers = j["workers"].get<int>();
    if (j.contains("pinna_use_simple")) config.pinna_use_simple = j["pinna_use_simple"].get<bool>();
    if (j.contains("zero_tol")) config.zero_tol = j["zero_tol"].get<double>();
    return config;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    return from_json(read_json_file(path));
}

const MethodOutcome& ExperimentResult::outcome(int design, Method method, int replicate) const {
    for (std::size_t m = 0; m < methods.size(); ++m)
        if (methods[m] == method) return outcomes[design][m][replicate];
    throw std::invalid_argument("experiment did not run method " +
                                std::string(method_name(method)));
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CAUSAL_MCMC_WORKERS")) {
        const int value = std::atoi(env);
        if (value > 0) return value;
    }
    return 1;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.out_dir.empty())
        throw std::invalid_argument("run_experiment: output directory must be set");
    const WeightedDag structure = resolve_dag(config.dag);
    const int p = structure.node_count();
    const std::vector<std::pair<int, int>> edges = structure.edges();

    ExperimentResult result;
    result.methods = config.methods;
    for (std::size_t d = 0; d < config.designs.size(); ++d)
        result.designs.push_back(resolve_design(config.designs[d], p, static_cast<int>(d)));

    const int n_designs = static_cast<int>(result.designs.size());
    const int n_methods = static_cast<int>(config.methods.size());
    result.outcomes.assign(
        n_designs, std::vector<std::vector<MethodOutcome>>(
                       n_methods, std::vector<MethodOutcome>(config.replicates)));

    fs::create_directories(config.out_dir + "/replicates");
    write_json_file(config.out_dir + "/config.json", config.to_json());

    auto run_replicate = [&](int r) {
        const std::uint64_t r64 = static_cast<std::uint64_t>(r);
        const std::string rep_dir =
            config.out_dir + "/replicates/" + replicate_dir_name(r);
        fs::create_directories(rep_dir);

        const SimulationModel model = sample_parameters(
            p, edges, config.sigma, derive_seed(config.seed, {tag("replicate"), r64}));
        const Eigen::MatrixXd truth = total_effects(model.params, model.order).values;
        write_model(model, rep_dir);

        for (int d = 0; d < n_designs; ++d) {
            const std::uint64_t d64 = static_cast<std::uint64_t>(d);
            const Dataset data =
                simulate(model.params, model.order, result.designs[d].design,
                         derive_seed(config.seed, {tag("replicate"), r64, tag("data"), d64}));
            const std::string design_dir = rep_dir + "/" + result.designs[d].dir_name;
            fs::create_directories(design_dir);
            write_dataset(data, design_dir + "/values.tsv", design_dir + "/interventions.tsv");

            for (int m = 0; m < n_methods; ++m) {
                const Method method = config.methods[m];
                const std::string method_dir = design_dir + "/" + method_name(method);
                const std::uint64_t chain_seed = derive_seed(
                    config.seed, {tag("replicate"), r64, tag("chain"), d64, tag(method_name(method))});
                MethodOutcome outcome =
                    method == Method::kPinna
                        ? run_pinna_method(data, truth, config.pinna_use_simple, config.zero_tol)
                        : run_chain_method(data, truth, method, config.chain, chain_seed,
                                           config.zero_tol, method_dir + "/chain");
                write_method_outcome(outcome, method, data, method_dir);
                result.outcomes[d][m][r] = std::move(outcome);
            }
        }
    };

    const int workers = std::min(resolve_workers(config.workers), config.replicates);
    std::vector<std::exception_ptr> errors(config.replicates);
    std::atomic<int> next_replicate{0};
    auto drain = [&]() {
        while (true) {
            const int r = next_replicate.fetch_add(1);
            if (r >= config.replicates) return;
            try {
                run_replicate(r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
        for (std::thread& thread : pool) thread.join();
    }
    for (const std::exception_ptr& error : errors)
        if (error) std::rethrow_exception(error);

    ReportGrid reports(n_designs,
                       std::vector<std::vector<std::optional<EvaluationReport>>>(n_methods));
    std::vector<std::string> design_labels, design_names, method_labels;
    for (const DesignSpec& spec : result.designs) {
        design_labels.push_back(spec.label);
        design_names.push_back(spec.dir_name);
    }
    for (Method method : config.methods) method_labels.push_back(method_label(method));
    for (int d = 0; d < n_designs; ++d)
        for (int m = 0; m < n_methods; ++m)
            for (const MethodOutcome& outcome : result.outcomes[d][m])
                reports[d][m].push_back(outcome.skipped
                                            ? std::optional<EvaluationReport>()
                                            : std::optional<EvaluationReport>(outcome.report));

    write_text_file(config.out_dir + "/aggregate.tsv",
                    aggregate_table(design_labels, method_labels, reports, '\t'));
    write_text_file(config.out_dir + "/aggregate_raw.tsv",
                    aggregate_raw_table(design_names, config.methods, reports));

    for (int d = 0; d < n_designs; ++d) {
        for (int m = 0; m < n_methods; ++m) {
            if (config.methods[m] == Method::kPinna) continue;
            Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, p);
            for (const MethodOutcome& outcome : result.outcomes[d][m])
                mean += outcome.order_distribution;
            mean /= static_cast<double>(config.replicates);
            write_matrix_tsv(mean, config.out_dir + "/order_distribution_" +
                                       result.designs[d].dir_name + "_" +
                                       method_name(config.methods[m]) + ".tsv");
        }
    }
    return result;
}

InferOutcome infer(const std::string& values_path, const std::string& interventions_path,
                   const InferOptions& options) {
    const Dataset data = read_dataset(values_path, interventions_path);
    InferOutcome out;
    nlohmann::json info{
        {"method", method_name(options.method)},
        {"samples", data.sample_count()},
        {"nodes", data.node_count()},
    };

    if (options.method == Method::kPinna) {
        const DesignCheck check = pinna_requires_full_design(data);
        if (!check.full) {
            std::string missing;
            for (int gene : check.missing_genes)
                missing += (missing.empty() ? "" : ", ") + std::to_string(gene + 1);
            out.warnings.push_back("no single knock-out for genes {" + missing +
                                   "}; their score rows are 0");
        }
        const DeviationMatrices scores = pinna_scores(data);
        out.effects = options.pinna_use_simple ? scores.simple : scores.zscore;
        for (int gene : scores.zero_variance_genes)
            out.warnings.push_back("gene " + std::to_string(gene + 1) +
                                   " has zero wild-type variance; sentinel z-scores used");
    } else {
        append_observational_warning(data, &out.warnings);
        ChainConfig chain = options.chain;
        chain.mode =
            options.method == Method::kMallows ? ChainMode::kMallows : ChainMode::kUniform;
        const ChainResult result = run_chain(data, chain);
        out.effects = result.posterior_effects;
        info["acceptance_rate"] = result.acceptance_rate;
        info["chosen_eta"] =
            result.chosen_eta ? nlohmann::json(*result.chosen_eta) : nlohmann::json();
        info["best_loglik"] = result.best_loglik;
        if (!options.out_dir.empty()) {
            fs::create_directories(options.out_dir + "/chain");
            write_chain_result(result, chain, options.out_dir + "/chain");
        }
    }

    if (!options.out_dir.empty()) {
        fs::create_directories(options.out_dir);
        write_matrix_tsv(out.effects, options.out_dir + "/effects.tsv");
        info["warnings"] = out.warnings;
        write_json_file(options.out_dir + "/infer.json", info);
    }
    return out;
}

void write_report(const std::string& experiment_dir) {
    const std::string config_path = experiment_dir + "/config.json";
    if (!fs::exists(config_path))
        throw std::runtime_error("'" + experiment_dir +
                                 "' is not an experiment directory: missing config.json");
    const ExperimentConfig config = ExperimentConfig::from_json_file(config_path);
    if (config.methods.empty())
        throw std::runtime_error("'" + experiment_dir + "': config.json lists no methods");

    const int n_designs = static_cast<int>(config.designs.size());
    const int n_methods = static_cast<int>(config.methods.size());
    ReportGrid reports(n_designs,
                       std::vector<std::vector<std::optional<EvaluationReport>>>(n_methods));
    std::vector<std::string> skip_notes;

    for (int d = 0; d < n_designs; ++d) {
        const std::string design_name = design_dir_name(config.designs[d], d);
        for (int m = 0; m < n_methods; ++m) {
            const std::string method = method_name(config.methods[m]);
            int skipped = 0;
            std::string reason;
            for (int r = 0; r < config.replicates; ++r) {
                const std::string base = experiment_dir + "/replicates/" +
                                         replicate_dir_name(r) + "/" + design_name + "/" + method;
                if (fs::exists(base + "/report.json")) {
                    reports[d][m].push_back(report_from_json(read_json_file(base + "/report.json")));
                } else if (fs::exists(base + "/skip.json")) {
                    reports[d][m].push_back(std::nullopt);
                    reason = read_json_file(base + "/skip.json").at("reason").get<std::string>();
                    ++skipped;
                } else {
                    throw std::runtime_error("missing artifacts: neither report.json nor "
                                             "skip.json under '" +
                                             base + "'");
                }
            }
            if (skipped > 0)
                skip_notes.push_back(std::string(method_label(config.methods[m])) + " on " +
                                     design_label_for_token(config.designs[d], d) + ": " + reason +
                                     " (" + std::to_string(skipped) + " of " +
                                     std::to_string(config.replicates) + " replicates skipped)");
        }
    }

    const std::string report_dir = experiment_dir + "/report";
    fs::create_directories(report_dir);

    std::vector<std::string> design_labels, method_labels;
    for (int d = 0; d < n_designs; ++d)
        design_labels.push_back(design_label_for_token(config.designs[d], d));
    for (Method method : config.methods) method_labels.push_back(method_label(method));
    write_text_file(report_dir + "/table1.tsv",
                    aggregate_table(design_labels, method_labels, reports, '\t'));

    std::ostringstream md;
    md << "# Experiment report\n\n";
    md << "- DAG: " << config.dag << "\n";
    md << "- sigma: " << format_double(config.sigma) << "\n";
    md << "- replicates: " << config.replicates << "\n";
    md << "- seed: " << config.seed << "\n";
    md << "- methods: ";
    for (int m = 0; m < n_methods; ++m) md << (m ? ", " : "") << method_labels[m];
    md << "\n\n## Results (mean over replicates, standard deviation in parentheses)\n\n";
    md << "| Setting | Criterion |";
    for (const std::string& label : method_labels) md << " " << label << " |";
    md << "\n|---|---|";
    for (int m = 0; m < n_methods; ++m) md << "---|";
    md << "\n";
    for (int d = 0; d < n_designs; ++d) {
        for (int metric = 0; metric < kMetricCount; ++metric) {
            md << "| " << design_labels[d] << " | " << kMetricNames[metric] << " |";
            for (int m = 0; m < n_methods; ++m) {
                const MetricStats stats = metric_stats(reports[d][m], metric);
                md << " " << (stats.n > 0 ? format_mean_sd(stats.mean, stats.sd) : "---") << " |";
            }
            md << "\n";
        }
    }
    if (!skip_notes.empty()) {
        md << "\n## Notes\n\n";
        for (const std::string& note : skip_notes) md << "- " << note << "\n";
    }
    md << "\nPlot-ready data: `table1.tsv`, `roc_<design>_<method>.tsv`, "
          "`pr_<design>_<method>.tsv`, `heatmap_<design>_<method>.tsv`.\n";
    write_text_file(report_dir + "/report.md", md.str());

    for (int d = 0; d < n_designs; ++d) {
        const std::string design_name = design_dir_name(config.designs[d], d);
        for (int m = 0; m < n_methods; ++m) {
            const std::string method = method_name(config.methods[m]);
            const std::string suffix = design_name + "_" + method + ".tsv";

            for (int r = 0; r < config.replicates; ++r) {
                const std::string rep = experiment_dir + "/replicates/" + replicate_dir_name(r);
                const std::string base = rep + "/" + design_name + "/" + method;
                if (!fs::exists(base + "/report.json")) continue;
                const Eigen::MatrixXd estimated = read_matrix_tsv(base + "/effects.tsv");
                const Eigen::MatrixXd truth = read_matrix_tsv(rep + "/true_effects.tsv");
                const Curves curves = roc_pr_curves(estimated, truth, config.zero_tol);
                std::ostringstream roc, pr;
                roc << "fpr\ttpr\n";
                for (const CurvePoint& point : curves.roc)
                    roc << format_double(point.x) << "\t" << format_double(point.y) << "\n";
                pr << "recall\tprecision\n";
                for (const CurvePoint& point : curves.pr)
                    pr << format_double(point.x) << "\t" << format_double(point.y) << "\n";
                write_text_file(report_dir + "/roc_" + suffix, roc.str());
                write_text_file(report_dir + "/pr_" + suffix, pr.str());
                break;  // one representative replicate per design and method
            }

            if (config.methods[m] == Method::kPinna) continue;
            Eigen::MatrixXd mean;
            int count = 0;
            for (int r = 0; r < config.replicates; ++r) {
                const std::string path = experiment_dir + "/replicates/" + replicate_dir_name(r) +
                                         "/" + design_name + "/" + method +
                                         "/chain/order_distribution.tsv";
                if (!fs::exists(path)) continue;
                const Eigen::MatrixXd one = read_matrix_tsv(path);
                if (count == 0)
                    mean = one;
                else
                    mean += one;
                ++count;
            }
            if (count > 0) {
                mean /= static_cast<double>(count);
                write_matrix_tsv(mean, report_dir + "/heatmap_" + suffix);
            }
        }
    }
}

std::string format_mean_sd(double mean, double sd) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3g (%.3g)", mean, sd);
    return buffer;
}

}  // namespace causalmcmc
