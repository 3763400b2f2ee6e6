#include "causalmcmc/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace causalmcmc {

Intervention::Intervention(std::vector<int> targets_in, Eigen::VectorXd values_in)
    : targets(std::move(targets_in)), values(std::move(values_in)) {
    if (static_cast<int>(targets.size()) != values.size())
        throw std::invalid_argument("Intervention: targets and values misaligned");
    for (int t : targets)
        if (t < 0) throw std::invalid_argument("Intervention: negative target");
    std::vector<std::size_t> idx(targets.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return targets[a] < targets[b]; });
    std::vector<int> sorted_targets(targets.size());
    Eigen::VectorXd sorted_values(values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        sorted_targets[i] = targets[idx[i]];
        sorted_values[static_cast<int>(i)] = values[static_cast<int>(idx[i])];
    }
    for (std::size_t i = 1; i < sorted_targets.size(); ++i)
        if (sorted_targets[i] == sorted_targets[i - 1])
            throw std::invalid_argument("Intervention: duplicate target");
    targets = std::move(sorted_targets);
    values = std::move(sorted_values);
}

bool Intervention::contains(int node) const {
    return std::binary_search(targets.begin(), targets.end(), node);
}

int InterventionDesign::total_samples() const {
    int n = 0;
    for (const auto& e : experiments) n += e.replicates;
    return n;
}

void InterventionDesign::validate(int node_count) const {
    if (total_samples() < 1)
        throw std::invalid_argument("InterventionDesign: total replicate count must be >= 1");
    for (const auto& e : experiments) {
        if (e.replicates < 0) throw std::invalid_argument("InterventionDesign: negative replicate count");
        for (int t : e.intervention.targets)
            if (t < 0 || t >= node_count)
                throw std::invalid_argument("InterventionDesign: target " + std::to_string(t + 1) +
                                            " out of range");
    }
}

std::vector<int> Dataset::samples_observing(int node) const {
    std::vector<int> out;
    out.reserve(interventions.size());
    for (int k = 0; k < sample_count(); ++k)
        if (!interventions[k].contains(node)) out.push_back(k);
    return out;
}

bool Dataset::has_any_intervention() const {
    for (const auto& iv : interventions)
        if (!iv.is_wild_type()) return true;
    return false;
}

void Dataset::validate() const {
    if (static_cast<int>(interventions.size()) != sample_count())
        throw std::invalid_argument("Dataset: one intervention record per sample required");
    for (int k = 0; k < sample_count(); ++k) {
        const auto& iv = interventions[k];
        for (std::size_t t = 0; t < iv.targets.size(); ++t) {
            const int node = iv.targets[t];
            if (node < 0 || node >= node_count())
                throw std::invalid_argument("Dataset: intervention target out of range in sample " +
                                            std::to_string(k + 1));
            if (values(k, node) != iv.values[static_cast<int>(t)])
                throw std::invalid_argument("Dataset: sample " + std::to_string(k + 1) + ", gene " +
                                            std::to_string(node + 1) +
                                            " does not equal its clamped value");
        }
    }
}

}  // namespace causalmcmc
