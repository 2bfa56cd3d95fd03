#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csistp/apx.hpp"
#include "csistp/graph.hpp"
#include "csistp/instance.hpp"

namespace csistp {

using Clusters = std::vector<std::vector<Vertex>>;

struct ClusteredCheck {
  bool ok = false;
  std::vector<Edge> witness;   // k-1 cut edges when ok
  std::string counterexample;  // reason when not ok
};

/// Whether removing k-1 edges can split `tree` into components that each hold
/// exactly one cluster's terminals. Decided by pairwise vertex-disjointness of
/// the clusters' minimal subtrees; the witness labels every vertex with its
/// nearest minimal subtree and cuts the edges between labels.
/// Throws std::invalid_argument if the tree does not span every terminal.
ClusteredCheck check_clustered(const Tree& tree, const Clusters& clusters);

/// Exhaustive search over all (k-1)-edge subsets; returns the first valid cut
/// in lexicographic order of edge positions. Cross-check for check_clustered.
std::optional<std::vector<Edge>> find_cut_brute_force(const Tree& tree, const Clusters& clusters);

/// True iff removing `cut` leaves exactly k components, the i-th holding all
/// of R_i and no other cluster's terminal.
bool is_valid_cut(const Tree& tree, const Clusters& clusters, const std::vector<Edge>& cut);

enum class InternalMode {
  literal,  // degree >= 2 inside the cluster's cut component
  strict,   // degree >= 2 inside the cluster's minimal subtree
};

std::string_view to_string(InternalMode mode);
InternalMode parse_internal_mode(std::string_view name);

struct InternalCheck {
  bool ok = false;
  std::vector<Vertex> violations;  // required-internal vertices that are leaves
};

/// Requires `witness` to be a valid cut (std::invalid_argument otherwise);
/// strict mode ignores it.
InternalCheck check_internal(const Tree& tree, const Clusters& clusters, const Clusters& required_internal,
                             const std::vector<Edge>& witness, InternalMode mode);

/// A cut under which every required-internal vertex is internal to its cut
/// component, if one exists. Which free vertices join which component decides
/// this, so the choice is made by a DP over the forest linking leaf-in-local-
/// tree required vertices to their free neighbours.
std::optional<std::vector<Edge>> find_internal_witness(const Tree& tree, const Clusters& clusters,
                                                       const Clusters& required_internal);

/// Exhaustive counterpart of find_internal_witness, for tests.
std::optional<std::vector<Edge>> find_internal_witness_brute_force(const Tree& tree,
                                                                   const Clusters& clusters,
                                                                   const Clusters& required_internal);

/// Full solution check against an instance.
struct VerificationReport {
  bool is_tree = false;
  std::string tree_error;
  bool spans_terminals = false;
  bool clustered = false;
  std::vector<Edge> witness;
  std::string clustered_error;
  bool internal_ok = false;
  std::vector<Vertex> internal_violations;
  Cost cost = 0.0;
  InternalMode mode = InternalMode::literal;

  bool valid() const noexcept { return is_tree && spans_terminals && clustered && internal_ok; }
};

/// `proposed_cut` is used as the witness when it is a valid cut; otherwise
/// (or when absent) the best witness is searched for.
VerificationReport verify_solution(const Instance& inst, const Tree& tree, InternalMode mode,
                                   const std::optional<std::vector<Edge>>& proposed_cut = std::nullopt);

inline constexpr std::size_t kDefaultOracleLimit = 9;

struct OracleResult {
  bool feasible = false;
  ClusteredSolution solution;  // meaningful only when feasible
};

/// Minimum-cost clustered selected-internal tree by enumerating every vertex
/// set R ⊆ S ⊆ V and every labelled spanning tree of G[S] (Prüfer sequences).
/// Feasibility uses the literal reading. Trees with a Steiner leaf are skipped
/// unless that leaf hangs off a required-internal vertex. Instance validation
/// is not enforced, so infeasible inputs yield feasible == false.
/// Throws std::length_error("oracle limit exceeded") when |V| > limit.
OracleResult exact_csistp(const Instance& inst, std::size_t limit = kDefaultOracleLimit,
                          Execution exec = Execution::serial);

/// Clustered Steiner tree optimum: exact_csistp with every required-internal set cleared.
OracleResult exact_cstp(const Instance& inst, std::size_t limit = kDefaultOracleLimit,
                        Execution exec = Execution::serial);

/// Sum of edge costs inside the clusters' minimal subtrees.
Cost local_cost_of(const MetricGraph& g, const Tree& tree, const Clusters& clusters);

/// Vertices of the minimal subtree of `tree` spanning `terminals`.
std::vector<Vertex> minimal_subtree(const Tree& tree, const std::vector<Vertex>& terminals);

}  // namespace csistp
