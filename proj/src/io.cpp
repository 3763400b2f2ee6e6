#include "causalmcmc/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <tuple>
#include <vector>

namespace causalmcmc {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t stop = line.find(sep, start);
        fields.push_back(line.substr(start, stop - start));
        if (stop == std::string::npos) break;
        start = stop + 1;
    }
    return fields;
}

double parse_double(const std::string& field, const std::string& path, int line) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(path, line, "expected a real number, got '" + field + "'");
    return value;
}

int parse_int(const std::string& field, const std::string& path, int line) {
    int value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(path, line, "expected an integer, got '" + field + "'");
    return value;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return in;
}

// Non-empty lines of a file; trailing \r stripped so CRLF inputs still parse.
std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

}  // namespace

ParseError::ParseError(const std::string& path, int line, const std::string& message)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

WeightedDag read_dag(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw ParseError(path, 1, "expected header 'p=<int>'");
    if (lines[0].rfind("p=", 0) != 0) throw ParseError(path, 1, "expected header 'p=<int>'");
    const int p = parse_int(lines[0].substr(2), path, 1);

    std::vector<std::tuple<int, int, double>> edges;
    for (std::size_t q = 1; q < lines.size(); ++q) {
        const int line_no = static_cast<int>(q) + 1;
        if (lines[q].empty()) continue;
        const std::vector<std::string> fields = split(lines[q], '\t');
        if (fields.size() != 3)
            throw ParseError(path, line_no, "expected 3 tab-separated fields");
        const int i = parse_int(fields[0], path, line_no);
        const int j = parse_int(fields[1], path, line_no);
        if (i < 1 || i > p || j < 1 || j > p)
            throw ParseError(path, line_no, "node label out of range 1.." + std::to_string(p));
        edges.emplace_back(i - 1, j - 1, parse_double(fields[2], path, line_no));
    }
    try {
        return WeightedDag(p, edges);
    } catch (const std::exception& e) {
        throw ParseError(path, 0, e.what());
    }
}

void write_dag(const WeightedDag& dag, const std::string& path) {
    std::ostringstream out;
    out << "p=" << dag.node_count() << "\n";
    for (const auto& [edge, weight] : dag.weights())
        out << edge.first + 1 << "\t" << edge.second + 1 << "\t" << format_double(weight) << "\n";
    write_text_file(path, out.str());
}

void write_dataset(const Dataset& data, const std::string& values_path,
                   const std::string& interventions_path) {
    const int p = data.node_count();
    std::ostringstream values;
    for (int j = 0; j < p; ++j) values << (j ? "\t" : "") << "G" << j + 1;
    values << "\n";
    for (int k = 0; k < data.sample_count(); ++k) {
        for (int j = 0; j < p; ++j)
            values << (j ? "\t" : "") << format_double(data.values(k, j));
        values << "\n";
    }
    write_text_file(values_path, values.str());

    std::ostringstream interventions;
    for (int k = 0; k < data.sample_count(); ++k) {
        const Intervention& iv = data.interventions[k];
        interventions << k + 1 << "\t";
        if (iv.targets.empty()) {
            interventions << "-\t-";
        } else {
            for (std::size_t t = 0; t < iv.targets.size(); ++t)
                interventions << (t ? "," : "") << iv.targets[t] + 1;
            interventions << "\t";
            for (Eigen::Index t = 0; t < iv.values.size(); ++t)
                interventions << (t ? "," : "") << format_double(iv.values[t]);
        }
        interventions << "\n";
    }
    write_text_file(interventions_path, interventions.str());
}

Dataset read_dataset(const std::string& values_path, const std::string& interventions_path) {
    const std::vector<std::string> value_lines = read_lines(values_path);
    if (value_lines.empty()) throw ParseError(values_path, 1, "expected header row G1..Gp");
    const std::vector<std::string> header = split(value_lines[0], '\t');
    const int p = static_cast<int>(header.size());
    for (int j = 0; j < p; ++j)
        if (header[j] != "G" + std::to_string(j + 1))
            throw ParseError(values_path, 1, "expected column 'G" + std::to_string(j + 1) +
                                                 "', got '" + header[j] + "'");

    Dataset data;
    const int n = static_cast<int>(value_lines.size()) - 1;
    data.values.resize(n, p);
    for (int k = 0; k < n; ++k) {
        const int line_no = k + 2;
        const std::vector<std::string> fields = split(value_lines[k + 1], '\t');
        if (static_cast<int>(fields.size()) != p)
            throw ParseError(values_path, line_no,
                             "expected " + std::to_string(p) + " fields, got " +
                                 std::to_string(fields.size()));
        for (int j = 0; j < p; ++j)
            data.values(k, j) = parse_double(fields[j], values_path, line_no);
    }

    const std::vector<std::string> iv_lines = read_lines(interventions_path);
    if (static_cast<int>(iv_lines.size()) != n)
        throw ParseError(interventions_path, static_cast<int>(iv_lines.size()) + 1,
                         "expected one row per sample (" + std::to_string(n) + ")");
    for (int k = 0; k < n; ++k) {
        const int line_no = k + 1;
        const std::vector<std::string> fields = split(iv_lines[k], '\t');
        if (fields.size() != 3)
            throw ParseError(interventions_path, line_no, "expected 3 tab-separated fields");
        if (parse_int(fields[0], interventions_path, line_no) != k + 1)
            throw ParseError(interventions_path, line_no,
                             "expected sample index " + std::to_string(k + 1));
        if (fields[1] == "-") {
            if (fields[2] != "-")
                throw ParseError(interventions_path, line_no, "targets '-' requires values '-'");
            data.interventions.emplace_back();
            continue;
        }
        std::vector<int> targets;
        for (const std::string& field : split(fields[1], ',')) {
            const int label = parse_int(field, interventions_path, line_no);
            if (label < 1 || label > p)
                throw ParseError(interventions_path, line_no,
                                 "target out of range 1.." + std::to_string(p));
            targets.push_back(label - 1);
        }
        const std::vector<std::string> value_fields = split(fields[2], ',');
        if (value_fields.size() != targets.size())
            throw ParseError(interventions_path, line_no, "targets and values differ in length");
        Eigen::VectorXd values(targets.size());
        for (std::size_t t = 0; t < value_fields.size(); ++t)
            values[static_cast<Eigen::Index>(t)] =
                parse_double(value_fields[t], interventions_path, line_no);
        try {
            data.interventions.emplace_back(targets, values);
        } catch (const std::exception& e) {
            throw ParseError(interventions_path, line_no, e.what());
        }
    }
    try {
        data.validate();
    } catch (const std::exception& e) {
        throw ParseError(interventions_path, 0, e.what());
    }
    return data;
}

void write_matrix_tsv(const Eigen::MatrixXd& matrix, const std::string& path) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
            out << (j ? "\t" : "") << format_double(matrix(i, j));
        out << "\n";
    }
    write_text_file(path, out.str());
}

Eigen::MatrixXd read_matrix_tsv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw ParseError(path, 1, "empty matrix file");
    const int cols = static_cast<int>(split(lines[0], '\t').size());
    Eigen::MatrixXd matrix(static_cast<int>(lines.size()), cols);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        const std::vector<std::string> fields = split(lines[i], '\t');
        if (static_cast<int>(fields.size()) != cols)
            throw ParseError(path, line_no, "ragged row: expected " + std::to_string(cols) +
                                                " fields, got " + std::to_string(fields.size()));
        for (int j = 0; j < cols; ++j)
            matrix(static_cast<Eigen::Index>(i), j) = parse_double(fields[j], path, line_no);
    }
    return matrix;
}

InterventionDesign read_design_json(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    if (!j.contains("experiments") || !j["experiments"].is_array())
        throw std::runtime_error(path + ": expected an 'experiments' array");
    InterventionDesign design;
    for (const auto& entry : j["experiments"]) {
        DesignEntry e;
        e.replicates = entry.at("replicates").get<int>();
        std::vector<int> targets;
        for (int label : entry.at("targets").get<std::vector<int>>()) {
            if (label < 1) throw std::runtime_error(path + ": targets are 1-based labels");
            targets.push_back(label - 1);
        }
        const auto raw_values = entry.at("values").get<std::vector<double>>();
        if (raw_values.size() != targets.size())
            throw std::runtime_error(path + ": targets and values differ in length");
        Eigen::VectorXd values(raw_values.size());
        for (std::size_t t = 0; t < raw_values.size(); ++t)
            values[static_cast<Eigen::Index>(t)] = raw_values[t];
        e.intervention = Intervention(targets, values);
        design.experiments.push_back(std::move(e));
    }
    return design;
}

void write_design_json(const InterventionDesign& design, const std::string& path) {
    nlohmann::json experiments = nlohmann::json::array();
    for (const DesignEntry& e : design.experiments) {
        nlohmann::json targets = nlohmann::json::array();
        nlohmann::json values = nlohmann::json::array();
        for (std::size_t t = 0; t < e.intervention.targets.size(); ++t) {
            targets.push_back(e.intervention.targets[t] + 1);
            values.push_back(e.intervention.values[static_cast<Eigen::Index>(t)]);
        }
        experiments.push_back(
            {{"replicates", e.replicates}, {"targets", targets}, {"values", values}});
    }
    write_json_file(path, {{"experiments", experiments}});
}

const char* chain_mode_name(ChainMode mode) {
    return mode == ChainMode::kMallows ? "mallows" : "uniform";
}

ChainMode chain_mode_from_name(const std::string& name) {
    if (name == "mallows") return ChainMode::kMallows;
    if (name == "uniform") return ChainMode::kUniform;
    throw std::invalid_argument("unknown chain mode '" + name + "' (expected mallows or uniform)");
}

nlohmann::json chain_config_to_json(const ChainConfig& config) {
    nlohmann::json j{
        {"iterations", config.iterations},
        {"burn_in", config.burn_in},
        {"thin", config.thin},
        {"eta_grid", config.eta_grid},
        {"trial_iterations", config.trial_iterations},
        {"target_acceptance", {config.target_acceptance.first, config.target_acceptance.second}},
        {"seed", config.seed},
        {"mode", chain_mode_name(config.mode)},
    };
    if (config.eta) j["eta"] = *config.eta;
    return j;
}

ChainConfig chain_config_from_json(const nlohmann::json& j) {
    ChainConfig config;
    if (j.contains("iterations")) config.iterations = j["iterations"].get<int>();
    if (j.contains("burn_in")) config.burn_in = j["burn_in"].get<int>();
    if (j.contains("thin")) config.thin = j["thin"].get<int>();
    if (j.contains("eta_grid")) config.eta_grid = j["eta_grid"].get<std::vector<double>>();
    if (j.contains("trial_iterations")) config.trial_iterations = j["trial_iterations"].get<int>();
    if (j.contains("target_acceptance")) {
        const auto interval = j["target_acceptance"].get<std::vector<double>>();
        if (interval.size() != 2)
            throw std::invalid_argument("target_acceptance must be [low, high]");
        config.target_acceptance = {interval[0], interval[1]};
    }
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("mode")) config.mode = chain_mode_from_name(j["mode"].get<std::string>());
    if (j.contains("eta") && !j["eta"].is_null()) config.eta = j["eta"].get<double>();
    return config;
}

void write_model(const SimulationModel& model, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_dag(model.dag, dir + "/model.dag");
    write_matrix_tsv(total_effects(model.params, model.order).values, dir + "/true_effects.tsv");

    const int p = model.dag.node_count();
    nlohmann::json order = nlohmann::json::array();
    nlohmann::json m_by_node = nlohmann::json::array();
    nlohmann::json sigma_by_node = nlohmann::json::array();
    for (int q = 0; q < p; ++q) order.push_back(model.order.node_at(q) + 1);
    for (int node = 0; node < p; ++node) {
        m_by_node.push_back(model.params.m[model.order.position_of(node)]);
        sigma_by_node.push_back(model.params.sigma[model.order.position_of(node)]);
    }
    write_json_file(dir + "/params.json",
                    {{"order", order}, {"m", m_by_node}, {"sigma", sigma_by_node}});
}

void write_chain_result(const ChainResult& result, const ChainConfig& config,
                        const std::string& dir) {
    write_matrix_tsv(result.order_distribution, dir + "/order_distribution.tsv");
    write_matrix_tsv(result.posterior_effects, dir + "/posterior_effects.tsv");
    write_matrix_tsv(result.best_effects, dir + "/best_effects.tsv");

    std::ostringstream trace;
    trace << "iteration\tloglik\taccepted\n";
    for (const TraceEntry& entry : result.trace)
        trace << entry.iteration << "\t" << format_double(entry.loglik) << "\t"
              << (entry.accepted ? 1 : 0) << "\n";
    write_text_file(dir + "/trace.tsv", trace.str());

    nlohmann::json meta{
        {"config", chain_config_to_json(config)},
        {"acceptance_rate", result.acceptance_rate},
        {"best_loglik", result.best_loglik},
        {"retained_samples", result.samples.size()},
    };
    meta["chosen_eta"] = result.chosen_eta ? nlohmann::json(*result.chosen_eta) : nlohmann::json();
    write_json_file(dir + "/meta.json", meta);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

nlohmann::json read_json_file(const std::string& path) {
    return nlohmann::json::parse(read_text_file(path));
}

}  // namespace causalmcmc
