#pragma once

#include <vector>

#include "csistp/graph.hpp"

namespace csistp {

/// What a quotient vertex stands for: a contracted cluster or an original
/// Steiner vertex.
struct QuotientOrigin {
  bool is_cluster = false;
  std::size_t index = 0;  // cluster index, or original vertex id

  bool operator==(const QuotientOrigin&) const = default;
};

/// G/R: every cluster contracted to one vertex. Quotient vertices 0..k-1 are
/// the cluster images r_1..r_k; the Steiner vertices follow in ascending
/// original index. An edge touching a cluster image costs the minimum over
/// the cluster's members, and `rep` remembers the achieving original pair.
/// The quotient need not satisfy the triangle inequality.
struct QuotientGraph {
  MetricGraph graph;
  std::size_t cluster_count = 0;
  std::vector<QuotientOrigin> origin;
  std::vector<Edge> rep;  // row-major over quotient vertex pairs

  std::vector<Vertex> terminal_images() const;
  bool operator==(const QuotientGraph&) const = default;
};

/// Clusters must be nonempty and pairwise disjoint. Ties in the min rule go to
/// the lexicographically smallest original pair (cluster-side vertex first).
QuotientGraph contract_clusters(const MetricGraph& g, const std::vector<std::vector<Vertex>>& clusters,
                                Execution exec = Execution::serial);

/// Original edge realising quotient edge (a, b). Its cost in g equals the
/// quotient cost exactly. Throws std::out_of_range for a == b or an index
/// outside the quotient.
Edge expand_edge(const QuotientGraph& q, Vertex a, Vertex b);

}  // namespace csistp
