#ifndef CAUSALMCMC_SIMULATOR_HPP_
#define CAUSALMCMC_SIMULATOR_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "causalmcmc/dag.hpp"
#include "causalmcmc/dataset.hpp"
#include "causalmcmc/gbn.hpp"

namespace causalmcmc {

// A fully specified generating model: the weighted DAG in original labels, a
// deterministic topological ordering of it, and the parameters in ordering
// coordinates.
struct SimulationModel {
    WeightedDag dag;
    NodeOrdering order;
    GbnParams params;
};

// Draws edge weights uniformly from (-1, -0.25) u (0.25, 1), sets every
// intercept to 0.5 and every residual SD to sigma. Reproducible under a fixed
// seed; throws on a cyclic structure.
SimulationModel sample_parameters(int node_count, const std::vector<std::pair<int, int>>& structure,
                                  double sigma, std::uint64_t seed);

// Ancestral forward sampling of the design: non-intervened nodes follow
// X_j = m_j + sum_i w_ij X_i + eps_j, intervened nodes are clamped to their
// fixed values exactly. Each design entry draws from its own derived stream,
// so appending entries never perturbs earlier rows.
Dataset simulate(const GbnParams& params, const NodeOrdering& ord, const InterventionDesign& design,
                 std::uint64_t seed);

enum class BuiltinDesign { kObservational, kMixed, kPartialKnockOut, kMultipleKnockOut };

// The four simulated intervention designs, all knock-outs clamped to 0:
//   obs      20 wild-types
//   mixed    10 wild-types + one knock-out per gene
//   partial  15 wild-types + knock-outs of genes 1..5
//   multiko  mixed + five double knock-outs {1,2} {1,3} {4,5} {5,6} {3,8}
InterventionDesign builtin_design(BuiltinDesign which, int node_count);
std::vector<InterventionDesign> builtin_designs(int node_count);

BuiltinDesign builtin_design_from_name(const std::string& name);
std::string builtin_design_label(BuiltinDesign which);

// Stand-in simulation graph: 10 nodes, 21 edges, acyclic, generated once with
// a fixed seed and frozen here together with one canonical weight draw. It is
// NOT the graph of the original simulation study (that structure is not
// available in machine-readable form); it follows the same recipe and is the
// default benchmark graph of this project.
const WeightedDag& standin_dag();

}  // namespace causalmcmc

#endif  // CAUSALMCMC_SIMULATOR_HPP_
