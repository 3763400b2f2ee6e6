#ifndef CAUSALMCMC_DAG_HPP_
#define CAUSALMCMC_DAG_HPP_

#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace causalmcmc {

// Directed acyclic graph with one real weight per edge. Node ids are 0-based
// internally; all file formats and user-facing labels are 1-based.
// Acyclicity is checked at construction, so a WeightedDag always admits a
// topological order. Immutable after construction.
class WeightedDag {
  public:
    WeightedDag(int node_count, const std::vector<std::tuple<int, int, double>>& weighted_edges);

    int node_count() const { return p_; }
    int edge_count() const { return static_cast<int>(weights_.size()); }

    bool has_edge(int source, int target) const;
    double weight(int source, int target) const;

    const std::map<std::pair<int, int>, double>& weights() const { return weights_; }
    std::vector<std::pair<int, int>> edges() const;

    // Deterministic topological order: Kahn's algorithm, smallest node first.
    std::vector<int> topological_order() const;

    // Transitive reachability: true iff a directed path source -> target exists.
    bool is_ancestor(int source, int target) const;

  private:
    int p_;
    std::map<std::pair<int, int>, double> weights_;
};

// A causal node ordering: position q holds the q-th node in causal order.
// Valid for a DAG iff every edge's source precedes its target.
class NodeOrdering {
  public:
    explicit NodeOrdering(std::vector<int> perm);

    static NodeOrdering identity(int p);

    int size() const { return static_cast<int>(perm_.size()); }
    int node_at(int position) const { return perm_[position]; }
    int position_of(int node) const { return positions_[node]; }
    const std::vector<int>& perm() const { return perm_; }

    bool operator==(const NodeOrdering& other) const { return perm_ == other.perm_; }
    bool operator!=(const NodeOrdering& other) const { return perm_ != other.perm_; }

  private:
    std::vector<int> perm_;       // position -> node
    std::vector<int> positions_;  // node -> position
};

// True iff every edge (i, j) of the DAG has i before j under ord.
bool validate_ordering(const WeightedDag& dag, const NodeOrdering& ord);

}  // namespace causalmcmc

#endif  // CAUSALMCMC_DAG_HPP_
