#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

#include "csistp/graph.hpp"
#include "csistp/instance.hpp"

namespace csistp {

/// Minimum spanning tree of G[s] by dense Prim, O(|s|^2). Ties go to the
/// smallest vertex index. A singleton s yields the edgeless tree.
Tree prim_mst(const MetricGraph& g, std::span<const Vertex> s);

/// Bookkeeping for the quadratic-effort smoke test.
struct HamPathStats {
  std::size_t splits = 0;         // recursion steps that cut an edge
  std::size_t vertex_visits = 0;  // vertices touched by all tree traversals
};

/// Hamiltonian path of t.vertices from `from` to `to` in the cube of t: every
/// consecutive pair is at tree distance at most three.
///
/// Follows Karaganis' constructive proof. If the endpoints are not adjacent,
/// the first edge (from, v1) of the tree path is cut, the `from` side is
/// solved between `from` and one of its neighbours (or itself if alone), the
/// other side between v1 and `to`, and the two halves are joined. If they are
/// adjacent, edge (from, to) is cut and each side is solved between its
/// endpoint and one of that endpoint's neighbours. Where a neighbour has to be
/// chosen, the smallest index is taken.
///
/// Throws std::invalid_argument if an endpoint is not in t, or if from == to
/// while t has more than one vertex.
Path cube_ham_path(const Tree& t, Vertex from, Vertex to, HamPathStats* stats = nullptr);

enum class EndpointRule {
  lexicographic,  // two smallest free vertices
  cheapest_pair,  // free pair minimising c(u, v), ties lexicographic
};

std::string_view to_string(EndpointRule rule);
/// Accepts "lexicographic" and "cheapest-pair".
EndpointRule parse_endpoint_rule(std::string_view name);

/// A Hamiltonian path through one cluster whose endpoints are free
/// (not required-internal) terminals.
struct LocalPath {
  std::size_t cluster_index = 0;
  Path path;
  std::pair<Vertex, Vertex> endpoints;
  Cost cost = 0.0;
  Cost mst_cost = 0.0;  // cost of the cluster MST the path was built from

  bool operator==(const LocalPath&) const = default;
};

/// MST of the cluster, endpoints chosen by `rule` among free terminals, then
/// cube_ham_path priced with direct edges of `g`.
/// Throws std::invalid_argument for a cluster without two free endpoints.
LocalPath build_local_path(const MetricGraph& g, const Instance& inst, std::size_t cluster,
                           EndpointRule rule = EndpointRule::lexicographic);

}  // namespace csistp
