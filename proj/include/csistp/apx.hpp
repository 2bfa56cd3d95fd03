#pragma once

#include <string>
#include <vector>

#include "csistp/graph.hpp"
#include "csistp/instance.hpp"
#include "csistp/local_trees.hpp"
#include "csistp/steiner.hpp"

namespace csistp {

/// A clustered Steiner tree together with the k-1 cut edges that split it
/// into one subtree per cluster, and the local / inter-cluster cost split.
/// Solutions from the exact oracle leave `local_paths` empty.
struct ClusteredSolution {
  Tree tree;
  std::vector<LocalPath> local_paths;
  std::vector<Edge> cut_edges;
  Cost local_cost = 0.0;
  Cost inter_cost = 0.0;
  Cost total_cost = 0.0;
  std::string solver;
  double bound = 0.0;  // guaranteed approximation factor, 0 when not applicable

  bool operator==(const ClusteredSolution&) const = default;
};

/// Guaranteed factor of the pipeline built on `solver`: its ratio plus four.
double theoretical_bound(const SteinerSolver& solver);
double theoretical_bound(double steiner_ratio);

/// Runs the full approximation pipeline:
///   1. MST of every cluster,
///   2. a cube Hamiltonian path through it between two free terminals,
///   3. contraction of every cluster to a single vertex,
///   4. a Steiner tree on the contracted graph spanning the cluster images,
///   5. expansion of that tree's edges back to original endpoints, joined
///      with the local paths.
/// Throws ValidationError for an infeasible instance; solver errors propagate.
ClusteredSolution solve_apx(const Instance& inst, const SteinerSolver& solver,
                            EndpointRule rule = EndpointRule::lexicographic,
                            Execution exec = Execution::serial);

}  // namespace csistp
