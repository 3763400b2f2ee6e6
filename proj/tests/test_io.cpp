#include <doctest.h>

#include <Eigen/Dense>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include <json.hpp>

#include "causalmcmc/io.hpp"
#include "causalmcmc/mcmc.hpp"
#include "causalmcmc/simulator.hpp"

using namespace causalmcmc;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test run.
class TempDir {
  public:
    TempDir() {
      dir_ = fs::temp_directory_path() / ("causalmcmc_io_test_" + std::to_string(counter_++));
      fs::remove_all(dir_);
      fs::create_directories(dir_);
    }
    ~TempDir() { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    const fs::path& dir() const { return dir_; }

  private:
    static inline int counter_ = 0;
    fs::path dir_;
};

double parse_back(const std::string& text) {
  // std::stod rejects subnormals with ERANGE; from_chars round-trips them.
  double value = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double value : {0.1, 1.0 / 3.0, -0.0, 0.0, 1e-300, 1e300, -12345.6789,
                       std::numeric_limits<double>::denorm_min(),
                       std::numeric_limits<double>::max()}) {
    CHECK(parse_back(format_double(value)) == value);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("dag files round-trip and use 1-based labels") {
  TempDir tmp;
  const WeightedDag dag(3, {{0, 1, 0.5}, {2, 0, -0.25}});
  write_dag(dag, tmp.path("g.dag"));

  const std::string text = read_text_file(tmp.path("g.dag"));
  CHECK(text == "p=3\n1\t2\t0.5\n3\t1\t-0.25\n");

  const WeightedDag back = read_dag(tmp.path("g.dag"));
  CHECK(back.node_count() == 3);
  CHECK(back.weights() == dag.weights());

  const WeightedDag& standin = standin_dag();
  write_dag(standin, tmp.path("standin.dag"));
  CHECK(read_dag(tmp.path("standin.dag")).weights() == standin.weights());

  // The shipped structure file must stay in sync with the frozen builtin.
  const WeightedDag shipped = read_dag(CAUSALMCMC_SOURCE_DIR "/data/standin10.dag");
  CHECK(shipped.weights() == standin.weights());
}

TEST_CASE("dag parse errors carry path and line") {
  TempDir tmp;

  write_text_file(tmp.path("bad_header.dag"), "q=3\n");
  CHECK_THROWS_AS(read_dag(tmp.path("bad_header.dag")), ParseError);
  try {
    read_dag(tmp.path("bad_header.dag"));
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("bad_header.dag:1:") != std::string::npos);
  }

  write_text_file(tmp.path("bad_edge.dag"), "p=2\n1\t2\n");
  try {
    read_dag(tmp.path("bad_edge.dag"));
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  write_text_file(tmp.path("bad_range.dag"), "p=2\n1\t3\t0.5\n");
  CHECK_THROWS_AS(read_dag(tmp.path("bad_range.dag")), ParseError);

  write_text_file(tmp.path("bad_weight.dag"), "p=2\n1\t2\tx\n");
  CHECK_THROWS_AS(read_dag(tmp.path("bad_weight.dag")), ParseError);

  // Structural errors (cycles, duplicates) surface as ParseError too.
  write_text_file(tmp.path("cycle.dag"), "p=2\n1\t2\t0.5\n2\t1\t0.5\n");
  CHECK_THROWS_AS(read_dag(tmp.path("cycle.dag")), ParseError);

  // A file that cannot be opened is an IO error, not a parse error.
  CHECK_THROWS_AS(read_dag(tmp.path("missing.dag")), std::runtime_error);
}

TEST_CASE("datasets round-trip bit-exactly") {
  TempDir tmp;
  // An 8-node model so the multiple-knock-out design applies.
  const SimulationModel model8 =
      sample_parameters(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}}, 0.2, 7);
  const Dataset data8 =
      simulate(model8.params, model8.order, builtin_design(BuiltinDesign::kMultipleKnockOut, 8), 8);

  write_dataset(data8, tmp.path("values.tsv"), tmp.path("interventions.tsv"));
  const Dataset back = read_dataset(tmp.path("values.tsv"), tmp.path("interventions.tsv"));
  CHECK(back.values == data8.values);  // bit-exact
  REQUIRE(back.interventions.size() == data8.interventions.size());
  for (std::size_t k = 0; k < back.interventions.size(); ++k) {
    CHECK(back.interventions[k].targets == data8.interventions[k].targets);
    CHECK(back.interventions[k].values == data8.interventions[k].values);
  }

  // Header names the genes G1..Gp; wild-type rows use "-".
  const std::string values_text = read_text_file(tmp.path("values.tsv"));
  CHECK(values_text.rfind("G1\tG2\tG3\tG4\tG5\tG6\tG7\tG8\n", 0) == 0);
  const std::string iv_text = read_text_file(tmp.path("interventions.tsv"));
  CHECK(iv_text.find("\t-\t-\n") != std::string::npos);
}

TEST_CASE("dataset parse errors carry line numbers") {
  TempDir tmp;
  write_text_file(tmp.path("values.tsv"), "G1\tG2\n0.5\t1.5\n");
  write_text_file(tmp.path("interventions.tsv"), "1\t-\t-\n");
  CHECK_NOTHROW(read_dataset(tmp.path("values.tsv"), tmp.path("interventions.tsv")));

  // Wrong gene header.
  write_text_file(tmp.path("bad_header.tsv"), "G1\tX2\n0.5\t1.5\n");
  CHECK_THROWS_AS(read_dataset(tmp.path("bad_header.tsv"), tmp.path("interventions.tsv")),
                  ParseError);

  // Ragged value row.
  write_text_file(tmp.path("ragged.tsv"), "G1\tG2\n0.5\n");
  try {
    read_dataset(tmp.path("ragged.tsv"), tmp.path("interventions.tsv"));
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  // Intervention row count mismatch.
  write_text_file(tmp.path("two_rows.tsv"), "1\t-\t-\n2\t-\t-\n");
  CHECK_THROWS_AS(read_dataset(tmp.path("values.tsv"), tmp.path("two_rows.tsv")), ParseError);

  // Bad sample index.
  write_text_file(tmp.path("bad_index.tsv"), "2\t-\t-\n");
  CHECK_THROWS_AS(read_dataset(tmp.path("values.tsv"), tmp.path("bad_index.tsv")), ParseError);

  // Target out of range.
  write_text_file(tmp.path("bad_target.tsv"), "1\t5\t0\n");
  CHECK_THROWS_AS(read_dataset(tmp.path("values.tsv"), tmp.path("bad_target.tsv")), ParseError);

  // Target/value arity mismatch.
  write_text_file(tmp.path("bad_arity.tsv"), "1\t1,2\t0\n");
  CHECK_THROWS_AS(read_dataset(tmp.path("values.tsv"), tmp.path("bad_arity.tsv")), ParseError);

  // Clamp mismatch: intervention says G1 = 9 but the row holds 0.5.
  write_text_file(tmp.path("bad_clamp.tsv"), "1\t1\t9\n");
  CHECK_THROWS_AS(read_dataset(tmp.path("values.tsv"), tmp.path("bad_clamp.tsv")), ParseError);
}

TEST_CASE("intervention rows with dashes parse as wild-type") {
  TempDir tmp;
  write_text_file(tmp.path("values.tsv"), "G1\tG2\n0.1\t0.2\n0\t0.4\n");
  write_text_file(tmp.path("interventions.tsv"),
                  "1\t-\t-\n2\t1\t0\n");
  const Dataset data = read_dataset(tmp.path("values.tsv"), tmp.path("interventions.tsv"));
  CHECK(data.interventions[0].is_wild_type());
  CHECK(data.interventions[1].targets == std::vector<int>{0});
  CHECK(data.interventions[1].values(0) == 0.0);
}

TEST_CASE("matrices round-trip bit-exactly") {
  TempDir tmp;
  Eigen::MatrixXd matrix(2, 3);
  matrix << 0.1, -1.0 / 3.0, 1e-300, 5.0, 0.0, -2.5;
  write_matrix_tsv(matrix, tmp.path("m.tsv"));
  const Eigen::MatrixXd back = read_matrix_tsv(tmp.path("m.tsv"));
  CHECK(back == matrix);

  write_text_file(tmp.path("ragged.tsv"), "1\t2\n3\n");
  try {
    read_matrix_tsv(tmp.path("ragged.tsv"));
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("design json round-trips") {
  TempDir tmp;
  const InterventionDesign design = builtin_design(BuiltinDesign::kMultipleKnockOut, 10);
  write_design_json(design, tmp.path("design.json"));
  const InterventionDesign back = read_design_json(tmp.path("design.json"));
  REQUIRE(back.experiments.size() == design.experiments.size());
  for (std::size_t e = 0; e < back.experiments.size(); ++e) {
    CHECK(back.experiments[e].replicates == design.experiments[e].replicates);
    CHECK(back.experiments[e].intervention.targets == design.experiments[e].intervention.targets);
    CHECK(back.experiments[e].intervention.values == design.experiments[e].intervention.values);
  }
  // Targets are serialized 1-based.
  const nlohmann::json j = read_json_file(tmp.path("design.json"));
  CHECK(j.at("experiments").at(1).at("targets").at(0).get<int>() == 1);
}

TEST_CASE("model directory holds dag, params, and effects") {
  TempDir tmp;
  const SimulationModel model = sample_parameters(4, {{0, 1}, {1, 2}, {0, 3}}, 0.1, 12);
  write_model(model, tmp.dir().string());
  CHECK(fs::exists(tmp.dir() / "model.dag"));
  CHECK(fs::exists(tmp.dir() / "params.json"));
  CHECK(fs::exists(tmp.dir() / "true_effects.tsv"));

  CHECK(read_dag((tmp.dir() / "model.dag").string()).weights() == model.dag.weights());
  const Eigen::MatrixXd effects = read_matrix_tsv((tmp.dir() / "true_effects.tsv").string());
  CHECK(effects == total_effects(model.params, model.order).values);

  const nlohmann::json params = read_json_file((tmp.dir() / "params.json").string());
  REQUIRE(params.at("order").size() == 4);
  // 1-based causal order; m and sigma are listed by original node.
  CHECK(params.at("order").at(0).get<int>() == model.order.node_at(0) + 1);
  CHECK(params.at("m").size() == 4);
  CHECK(params.at("sigma").size() == 4);
  CHECK(params.at("m").at(0).get<double>() == 0.5);
  CHECK(params.at("sigma").at(0).get<double>() == 0.1);
}

TEST_CASE("chain mode names round-trip") {
  CHECK(std::string(chain_mode_name(ChainMode::kMallows)) == "mallows");
  CHECK(std::string(chain_mode_name(ChainMode::kUniform)) == "uniform");
  CHECK(chain_mode_from_name("mallows") == ChainMode::kMallows);
  CHECK(chain_mode_from_name("uniform") == ChainMode::kUniform);
  CHECK_THROWS_AS(chain_mode_from_name("pinna"), std::invalid_argument);
}

TEST_CASE("chain config json round-trips and accepts partial overrides") {
  ChainConfig config;
  config.iterations = 1234;
  config.burn_in = 100;
  config.thin = 7;
  config.seed = 99;
  config.mode = ChainMode::kUniform;
  config.eta = 0.45;
  config.eta_grid = {0.3, 0.9};
  config.trial_iterations = 55;
  config.target_acceptance = {0.25, 0.45};

  const nlohmann::json j = chain_config_to_json(config);
  const ChainConfig back = chain_config_from_json(j);
  CHECK(back.iterations == config.iterations);
  CHECK(back.burn_in == config.burn_in);
  CHECK(back.thin == config.thin);
  CHECK(back.seed == config.seed);
  CHECK(back.mode == config.mode);
  CHECK(back.eta == config.eta);
  CHECK(back.eta_grid == config.eta_grid);
  CHECK(back.trial_iterations == config.trial_iterations);
  CHECK(back.target_acceptance == config.target_acceptance);

  // Partial JSON: unspecified fields keep their defaults.
  const ChainConfig partial = chain_config_from_json(nlohmann::json{{"iterations", 600},
                                                                    {"burn_in", 50}});
  CHECK(partial.iterations == 600);
  CHECK(partial.burn_in == 50);
  CHECK(partial.thin == 50);
  CHECK(partial.mode == ChainMode::kMallows);
  CHECK(!partial.eta.has_value());
}

TEST_CASE("chain result directory holds the documented artifacts") {
  TempDir tmp;
  const SimulationModel model = sample_parameters(3, {{0, 1}, {1, 2}}, 0.1, 20);
  const Dataset data =
      simulate(model.params, model.order, builtin_design(BuiltinDesign::kMixed, 3), 21);
  ChainConfig config;
  config.iterations = 300;
  config.burn_in = 50;
  config.thin = 10;
  config.eta = 0.6;
  config.seed = 4;
  const ChainResult result = run_chain(data, config);
  write_chain_result(result, config, tmp.dir().string());

  const Eigen::MatrixXd dist = read_matrix_tsv((tmp.dir() / "order_distribution.tsv").string());
  CHECK(dist == result.order_distribution);
  CHECK(read_matrix_tsv((tmp.dir() / "posterior_effects.tsv").string()) ==
        result.posterior_effects);
  CHECK(read_matrix_tsv((tmp.dir() / "best_effects.tsv").string()) == result.best_effects);

  const std::string trace = read_text_file((tmp.dir() / "trace.tsv").string());
  CHECK(trace.rfind("iteration\tloglik\taccepted\n", 0) == 0);
  int lines = 0;
  for (char c : trace) {
    lines += c == '\n';
  }
  CHECK(lines == 301);  // header + one row per iteration

  const nlohmann::json meta = read_json_file((tmp.dir() / "meta.json").string());
  CHECK(meta.at("acceptance_rate").get<double>() == result.acceptance_rate);
  CHECK(meta.at("retained_samples").get<int>() == static_cast<int>(result.samples.size()));
  CHECK(meta.at("config").at("iterations").get<int>() == 300);
  CHECK(meta.at("chosen_eta").get<double>() == 0.6);
}

TEST_CASE("json files end with a newline and reload identically") {
  TempDir tmp;
  const nlohmann::json j = {{"b", 1}, {"a", {1, 2, 3}}};
  write_json_file(tmp.path("x.json"), j);
  const std::string text = read_text_file(tmp.path("x.json"));
  CHECK(!text.empty());
  CHECK(text.back() == '\n');
  CHECK(read_json_file(tmp.path("x.json")) == j);
}
