#include "csistp/quotient.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace csistp {

std::vector<Vertex> QuotientGraph::terminal_images() const {
  std::vector<Vertex> r(cluster_count);
  for (std::size_t i = 0; i < cluster_count; ++i) r[i] = i;
  return r;
}

namespace {

// Members of quotient vertex q in ascending order.
const std::vector<Vertex>& members_of(const QuotientOrigin& o,
                                      const std::vector<std::vector<Vertex>>& sorted_clusters,
                                      std::vector<Vertex>& scratch) {
  if (o.is_cluster) return sorted_clusters[o.index];
  scratch.assign(1, o.index);
  return scratch;
}

void fill_row(const MetricGraph& g, const std::vector<QuotientOrigin>& origin,
              const std::vector<std::vector<Vertex>>& sorted_clusters, std::size_t a,
              Cost* costs, Edge* rep) {
  const std::size_t m = origin.size();
  std::vector<Vertex> scratch_a, scratch_b;
  const auto& left = members_of(origin[a], sorted_clusters, scratch_a);
  for (std::size_t b = 0; b < m; ++b) {
    if (a == b) {
      costs[b] = 0.0;
      rep[b] = Edge(left.front(), left.front());
      continue;
    }
    const auto& right = members_of(origin[b], sorted_clusters, scratch_b);
    Cost best = std::numeric_limits<Cost>::infinity();
    std::pair<Vertex, Vertex> arg{0, 0};
    // Row a scans (u in a, v in b) in lexicographic order, and row b the
    // transpose; both keep the first strict minimum under the same
    // (smaller-quotient-side first) key so rep(a,b) == rep(b,a).
    const bool a_first = a < b;
    const auto& first = a_first ? left : right;
    const auto& second = a_first ? right : left;
    for (Vertex u : first) {
      for (Vertex v : second) {
        const Cost c = g(u, v);
        if (c < best) {
          best = c;
          arg = {u, v};
        }
      }
    }
    costs[b] = best;
    rep[b] = Edge(arg.first, arg.second);
  }
}

}  // namespace

QuotientGraph contract_clusters(const MetricGraph& g, const std::vector<std::vector<Vertex>>& clusters,
                                Execution exec) {
  const std::size_t n = g.size();
  const std::size_t k = clusters.size();
  std::vector<std::vector<Vertex>> sorted_clusters = clusters;
  std::vector<char> in_cluster(n, 0);
  for (auto& c : sorted_clusters) {
    if (c.empty()) throw std::invalid_argument("cannot contract an empty cluster");
    std::sort(c.begin(), c.end());
    for (Vertex v : c) {
      if (v >= n || in_cluster[v]) throw std::invalid_argument("clusters must be disjoint and in range");
      in_cluster[v] = 1;
    }
  }

  QuotientGraph q;
  q.cluster_count = k;
  for (std::size_t i = 0; i < k; ++i) q.origin.push_back({true, i});
  for (Vertex v = 0; v < n; ++v) {
    if (!in_cluster[v]) q.origin.push_back({false, v});
  }
  const std::size_t m = q.origin.size();
  std::vector<Cost> costs(m * m);
  q.rep.resize(m * m);
  const auto rows = static_cast<std::ptrdiff_t>(m);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t a = 0; a < rows; ++a) {
      fill_row(g, q.origin, sorted_clusters, static_cast<std::size_t>(a), costs.data() + a * rows,
               q.rep.data() + a * rows);
    }
  } else {
    for (std::ptrdiff_t a = 0; a < rows; ++a) {
      fill_row(g, q.origin, sorted_clusters, static_cast<std::size_t>(a), costs.data() + a * rows,
               q.rep.data() + a * rows);
    }
  }
  q.graph = MetricGraph(m, std::move(costs));
  return q;
}

Edge expand_edge(const QuotientGraph& q, Vertex a, Vertex b) {
  const std::size_t m = q.graph.size();
  if (a >= m || b >= m || a == b) throw std::out_of_range("not an edge of the quotient graph");
  return q.rep[a * m + b];
}

}  // namespace csistp
