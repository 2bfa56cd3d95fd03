#include "csistp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace csistp {

MetricGraph::MetricGraph(std::size_t n, std::vector<Cost> costs)
    : n_(n), costs_(std::move(costs)) {
  if (costs_.size() != n_ * n_) {
    throw std::invalid_argument("cost matrix has wrong size");
  }
  for (std::size_t u = 0; u < n_; ++u) {
    if (costs_[u * n_ + u] != 0.0) {
      throw std::invalid_argument("cost matrix diagonal must be zero");
    }
    for (std::size_t v = 0; v < n_; ++v) {
      const Cost c = costs_[u * n_ + v];
      if (!std::isfinite(c) || c < 0.0) {
        throw std::invalid_argument("cost matrix has a negative or non-finite entry");
      }
      if (v > u && std::abs(c - costs_[v * n_ + u]) > kMetricEps) {
        throw std::invalid_argument("cost matrix not symmetric");
      }
    }
  }
  // Within-tolerance asymmetry is folded onto the upper triangle.
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) costs_[v * n_ + u] = costs_[u * n_ + v];
  }
}

MetricGraph MetricGraph::from_rows(const std::vector<std::vector<Cost>>& rows) {
  const std::size_t n = rows.size();
  bool square = true;
  bool lower = true;
  for (std::size_t i = 0; i < n; ++i) {
    square = square && rows[i].size() == n;
    lower = lower && rows[i].size() == i + 1;
  }
  std::vector<Cost> m(n * n, 0.0);
  if (lower && !(square && n == 1)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        m[i * n + j] = rows[i][j];
        m[j * n + i] = rows[i][j];
      }
    }
  } else if (square) {
    for (std::size_t i = 0; i < n; ++i) std::copy(rows[i].begin(), rows[i].end(), m.begin() + i * n);
  } else {
    throw std::invalid_argument("cost rows are neither a full matrix nor a lower triangle");
  }
  return MetricGraph(n, std::move(m));
}

Tree Tree::from_edges(std::vector<Edge> edges) {
  Tree t;
  for (const Edge& e : edges) {
    t.vertices.push_back(e.u);
    t.vertices.push_back(e.v);
  }
  std::sort(t.vertices.begin(), t.vertices.end());
  t.vertices.erase(std::unique(t.vertices.begin(), t.vertices.end()), t.vertices.end());
  t.edges = std::move(edges);
  return t;
}

bool Tree::contains(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::optional<std::string> validate_tree(const Tree& t) {
  if (t.vertices.empty()) return "tree has no vertices";
  if (!std::is_sorted(t.vertices.begin(), t.vertices.end()) ||
      std::adjacent_find(t.vertices.begin(), t.vertices.end()) != t.vertices.end()) {
    return "tree vertex list is not sorted and distinct";
  }
  if (t.edges.size() + 1 != t.vertices.size()) return "edge count is not |vertices| - 1";
  auto local = [&](Vertex x) {
    return static_cast<Vertex>(std::lower_bound(t.vertices.begin(), t.vertices.end(), x) -
                               t.vertices.begin());
  };
  DisjointSets sets(t.vertices.size());
  for (const Edge& e : t.edges) {
    if (e.u == e.v) return "self-loop at vertex " + std::to_string(e.u);
    if (!t.contains(e.u) || !t.contains(e.v)) {
      return "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
             ") leaves the vertex set";
    }
    if (!sets.unite(local(e.u), local(e.v))) {
      return "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
             ") closes a cycle or is duplicated";
    }
  }
  // n-1 edges and no cycle imply connectivity.
  return std::nullopt;
}

bool is_metric(const MetricGraph& g) {
  const std::size_t n = g.size();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      const Cost uv = g(u, v);
      for (Vertex w = 0; w < n; ++w) {
        if (g(u, w) > uv + g(v, w) + kMetricEps) return false;
      }
    }
  }
  return true;
}

namespace {

void dijkstra_from(const MetricGraph& g, Vertex s, Cost* dist, Vertex* pred) {
  const std::size_t n = g.size();
  std::vector<char> done(n, 0);
  std::fill(dist, dist + n, std::numeric_limits<Cost>::infinity());
  std::fill(pred, pred + n, s);
  std::vector<std::size_t> hops(n, 0);
  dist[s] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    Vertex u = n;
    for (Vertex v = 0; v < n; ++v) {
      if (!done[v] && (u == n || dist[v] < dist[u])) u = v;
    }
    done[u] = 1;
    const auto row = g.row(u);
    for (Vertex v = 0; v < n; ++v) {
      if (done[v]) continue;
      const Cost nd = dist[u] + row[v];
      // Within kMetricEps, fewer hops win, then the smaller predecessor.
      const std::size_t h = hops[u] + 1;
      if (nd < dist[v] - kMetricEps) {
        dist[v] = nd;
        pred[v] = u;
        hops[v] = h;
      } else if (nd <= dist[v] + kMetricEps && (h < hops[v] || (h == hops[v] && u < pred[v]))) {
        dist[v] = std::min(dist[v], nd);
        pred[v] = u;
        hops[v] = h;
      }
    }
  }
}

}  // namespace

MetricClosure metric_closure(const MetricGraph& g, Execution exec) {
  const std::size_t n = g.size();
  std::vector<Cost> dist(n * n);
  std::vector<Vertex> pred(n * n);
  const auto sources = static_cast<std::ptrdiff_t>(n);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < sources; ++s) {
      dijkstra_from(g, static_cast<Vertex>(s), dist.data() + s * sources, pred.data() + s * sources);
    }
  } else {
    for (std::ptrdiff_t s = 0; s < sources; ++s) {
      dijkstra_from(g, static_cast<Vertex>(s), dist.data() + s * sources, pred.data() + s * sources);
    }
  }
  // Distances from the two directions can differ in the last ulp.
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const Cost d = std::min(dist[u * n + v], dist[v * n + u]);
      dist[u * n + v] = d;
      dist[v * n + u] = d;
    }
  }
  return MetricClosure{MetricGraph(n, std::move(dist)), std::move(pred)};
}

Path MetricClosure::path(Vertex s, Vertex t) const {
  const std::size_t n = graph.size();
  Path rev{t};
  for (Vertex cur = t; cur != s; cur = pred[s * n + cur]) rev.push_back(pred[s * n + cur]);
  return Path(rev.rbegin(), rev.rend());
}

Cost tree_cost(const MetricGraph& g, std::span<const Edge> edges) {
  Cost total = 0.0;
  for (const Edge& e : edges) total += g.cost(e);
  return total;
}

Cost tree_cost(const MetricGraph& g, const Tree& t) { return tree_cost(g, t.edges); }

Cost path_cost(const MetricGraph& g, std::span<const Vertex> path) {
  Cost total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += g(path[i - 1], path[i]);
  return total;
}

InducedSubgraph induced_subgraph(const MetricGraph& g, std::span<const Vertex> s) {
  if (s.empty()) throw std::invalid_argument("empty induced set");
  const std::size_t m = s.size();
  std::vector<Cost> costs(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (s[i] >= g.size()) throw std::invalid_argument("induced set vertex out of range");
    for (std::size_t j = 0; j < m; ++j) costs[i * m + j] = g(s[i], s[j]);
  }
  return InducedSubgraph{MetricGraph(m, std::move(costs)), std::vector<Vertex>(s.begin(), s.end())};
}

std::vector<std::vector<Vertex>> tree_adjacency(const Tree& t, std::size_t n) {
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : t.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
}

Vertex DisjointSets::find(Vertex x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(Vertex a, Vertex b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

}  // namespace csistp
