#include "causalmcmc/dag.hpp"

#include <queue>
#include <stdexcept>
#include <string>

namespace causalmcmc {

WeightedDag::WeightedDag(int node_count, const std::vector<std::tuple<int, int, double>>& weighted_edges)
    : p_(node_count) {
    if (p_ < 1) throw std::invalid_argument("WeightedDag: node count must be >= 1");
    for (const auto& [i, j, w] : weighted_edges) {
        if (i < 0 || i >= p_ || j < 0 || j >= p_)
            throw std::invalid_argument("WeightedDag: edge endpoint out of range");
        if (i == j) throw std::invalid_argument("WeightedDag: self-loops are not allowed");
        auto [it, inserted] = weights_.emplace(std::make_pair(i, j), w);
        (void)it;
        if (!inserted) throw std::invalid_argument("WeightedDag: duplicate edge");
    }
    // Throws when no topological order exists.
    topological_order();
}

bool WeightedDag::has_edge(int source, int target) const {
    return weights_.count({source, target}) > 0;
}

double WeightedDag::weight(int source, int target) const {
    auto it = weights_.find({source, target});
    if (it == weights_.end()) throw std::out_of_range("WeightedDag: no such edge");
    return it->second;
}

std::vector<std::pair<int, int>> WeightedDag::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(weights_.size());
    for (const auto& [edge, w] : weights_) out.push_back(edge);
    return out;
}

std::vector<int> WeightedDag::topological_order() const {
    std::vector<int> in_degree(p_, 0);
    std::vector<std::vector<int>> children(p_);
    for (const auto& [edge, w] : weights_) {
        children[edge.first].push_back(edge.second);
        ++in_degree[edge.second];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < p_; ++v)
        if (in_degree[v] == 0) ready.push(v);
    std::vector<int> order;
    order.reserve(p_);
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int c : children[v])
            if (--in_degree[c] == 0) ready.push(c);
    }
    if (static_cast<int>(order.size()) != p_)
        throw std::invalid_argument("WeightedDag: graph contains a cycle");
    return order;
}

bool WeightedDag::is_ancestor(int source, int target) const {
    std::vector<std::vector<int>> children(p_);
    for (const auto& [edge, w] : weights_) children[edge.first].push_back(edge.second);
    std::vector<bool> seen(p_, false);
    std::queue<int> frontier;
    frontier.push(source);
    seen[source] = true;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int c : children[v]) {
            if (c == target) return true;
            if (!seen[c]) {
                seen[c] = true;
                frontier.push(c);
            }
        }
    }
    return false;
}

NodeOrdering::NodeOrdering(std::vector<int> perm) : perm_(std::move(perm)) {
    const int p = static_cast<int>(perm_.size());
    if (p < 1) throw std::invalid_argument("NodeOrdering: empty permutation");
    positions_.assign(p, -1);
    for (int q = 0; q < p; ++q) {
        int node = perm_[q];
        if (node < 0 || node >= p)
            throw std::invalid_argument("NodeOrdering: label out of range");
        if (positions_[node] != -1)
            throw std::invalid_argument("NodeOrdering: duplicate label " + std::to_string(node + 1));
        positions_[node] = q;
    }
}

NodeOrdering NodeOrdering::identity(int p) {
    std::vector<int> perm(p);
    for (int q = 0; q < p; ++q) perm[q] = q;
    return NodeOrdering(std::move(perm));
}

bool validate_ordering(const WeightedDag& dag, const NodeOrdering& ord) {
    if (ord.size() != dag.node_count())
        throw std::invalid_argument("validate_ordering: ordering length does not match node count");
    for (const auto& [edge, w] : dag.weights()) {
        if (ord.position_of(edge.first) >= ord.position_of(edge.second)) return false;
    }
    return true;
}

}  // namespace causalmcmc
