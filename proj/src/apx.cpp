#include "csistp/apx.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "csistp/quotient.hpp"

namespace csistp {

double theoretical_bound(double steiner_ratio) { return steiner_ratio + 4.0; }

double theoretical_bound(const SteinerSolver& solver) { return theoretical_bound(solver.ratio()); }

namespace {

// Assigns every vertex of the quotient tree to its nearest cluster image
// (tree-path cost, ties to the smaller cluster index). Each label class is a
// connected subtree holding exactly one image, so the edges joining different
// classes are the k-1 cut edges.
std::vector<std::size_t> nearest_image_labels(const QuotientGraph& q, const Tree& qt) {
  const std::size_t m = q.graph.size();
  const std::size_t k = q.cluster_count;
  const auto adj = tree_adjacency(qt, m);
  std::vector<Cost> dist(m, std::numeric_limits<Cost>::infinity());
  std::vector<std::size_t> label(m, k);
  using Item = std::tuple<Cost, std::size_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t i = 0; i < k; ++i) {
    dist[i] = 0.0;
    label[i] = i;
    heap.emplace(0.0, i, i);
  }
  std::vector<char> done(m, 0);
  while (!heap.empty()) {
    const auto [d, lab, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    label[u] = lab;
    for (Vertex w : adj[u]) {
      if (done[w] || w < k) continue;  // images keep their own label
      const Cost nd = d + q.graph(u, w);
      if (nd < dist[w] || (nd == dist[w] && lab < label[w])) {
        dist[w] = nd;
        label[w] = lab;
        heap.emplace(nd, lab, w);
      }
    }
  }
  return label;
}

}  // namespace

ClusteredSolution solve_apx(const Instance& inst, const SteinerSolver& solver, EndpointRule rule,
                            Execution exec) {
  const auto report = validate_instance(inst);
  if (!report.ok()) {
    std::string msg = "infeasible instance:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  const MetricGraph& g = inst.graph;
  const std::size_t k = inst.cluster_count();

  ClusteredSolution sol;
  sol.solver = std::string(solver.name());
  sol.bound = theoretical_bound(solver);

  // Steps 1-2.
  sol.local_paths.resize(k);
  const auto clusters = static_cast<std::ptrdiff_t>(k);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < clusters; ++i) {
      sol.local_paths[i] = build_local_path(g, inst, static_cast<std::size_t>(i), rule);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < clusters; ++i) {
      sol.local_paths[i] = build_local_path(g, inst, static_cast<std::size_t>(i), rule);
    }
  }

  // Steps 3-4.
  const QuotientGraph q = contract_clusters(g, inst.clusters, exec);
  const auto images = q.terminal_images();
  const Tree inter = solver.solve(q.graph, images);
  const auto labels = nearest_image_labels(q, inter);

  // Step 5.
  std::vector<Edge> edges;
  for (const LocalPath& lp : sol.local_paths) {
    for (std::size_t i = 1; i < lp.path.size(); ++i) edges.emplace_back(lp.path[i - 1], lp.path[i]);
    sol.local_cost += lp.cost;
  }
  for (const Edge& qe : inter.edges) {
    const Edge e = expand_edge(q, qe.u, qe.v);
    edges.push_back(e);
    sol.inter_cost += g.cost(e);
    if (labels[qe.u] != labels[qe.v]) sol.cut_edges.push_back(e);
  }
  std::sort(sol.cut_edges.begin(), sol.cut_edges.end());

  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::logic_error("expanded inter-cluster edge duplicates an existing edge");
  }
  sol.tree = edges.empty() ? Tree::single(inst.clusters.front().front()) : Tree::from_edges(std::move(edges));
  sol.total_cost = sol.local_cost + sol.inter_cost;
  return sol;
}

}  // namespace csistp
