#ifndef CAUSALMCMC_IO_HPP_
#define CAUSALMCMC_IO_HPP_

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "causalmcmc/dag.hpp"
#include "causalmcmc/dataset.hpp"
#include "causalmcmc/mcmc.hpp"
#include "causalmcmc/simulator.hpp"

namespace causalmcmc {

// Malformed input file; the message carries "path:line:" context.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& path, int line, const std::string& message);

    int line() const { return line_; }

  private:
    int line_;
};

// Shortest decimal string that round-trips to the exact double.
std::string format_double(double value);

// DAG file: header `p=<int>`, then one `i<TAB>j<TAB>w` line per edge with
// 1-based node labels, LF line endings.
WeightedDag read_dag(const std::string& path);
void write_dag(const WeightedDag& dag, const std::string& path);

// Dataset pair. Values TSV: header row G1..Gp, one sample per row.
// Interventions TSV: one row per sample,
// `sample_index<TAB>targets<TAB>values` with comma-separated 1-based targets
// and fixed values, both "-" for wild-type rows.
void write_dataset(const Dataset& data, const std::string& values_path,
                   const std::string& interventions_path);
Dataset read_dataset(const std::string& values_path, const std::string& interventions_path);

// Headerless tab-separated matrix.
void write_matrix_tsv(const Eigen::MatrixXd& matrix, const std::string& path);
Eigen::MatrixXd read_matrix_tsv(const std::string& path);

// Intervention design JSON: {"experiments": [{"replicates": n, "targets":
// [1-based...], "values": [...]}]}.
InterventionDesign read_design_json(const std::string& path);
void write_design_json(const InterventionDesign& design, const std::string& path);

// Writes model.dag, params.json (causal order plus by-node m and sigma), and
// true_effects.tsv for a drawn simulation model.
void write_model(const SimulationModel& model, const std::string& dir);

// Chain directory: order_distribution.tsv, posterior_effects.tsv,
// best_effects.tsv, trace.tsv (iteration, loglik, accepted), meta.json with
// the config echo, chosen eta, and acceptance rate.
void write_chain_result(const ChainResult& result, const ChainConfig& config,
                        const std::string& dir);

const char* chain_mode_name(ChainMode mode);
ChainMode chain_mode_from_name(const std::string& name);

nlohmann::json chain_config_to_json(const ChainConfig& config);
// Reads the fields present in j over a default-constructed config.
ChainConfig chain_config_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_IO_HPP_
