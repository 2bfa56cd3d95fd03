#include "csistp/steiner.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "csistp/local_trees.hpp"

namespace csistp {

namespace {

std::vector<Vertex> normalized_terminals(const MetricGraph& g, std::span<const Vertex> terminals) {
  if (terminals.empty()) throw std::invalid_argument("Steiner tree needs at least one terminal");
  std::vector<Vertex> t(terminals.begin(), terminals.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.back() >= g.size()) throw std::invalid_argument("terminal out of range");
  return t;
}

void append_path(const MetricClosure& closure, Vertex s, Vertex t, std::vector<Edge>& edges) {
  const Path p = closure.path(s, t);
  for (std::size_t i = 1; i < p.size(); ++i) edges.emplace_back(p[i - 1], p[i]);
}

}  // namespace

Tree prune_to_tree(const MetricGraph& g, std::vector<Edge> edges, std::span<const Vertex> terminals) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::stable_sort(edges.begin(), edges.end(),
                   [&](const Edge& a, const Edge& b) { return g.cost(a) < g.cost(b); });

  DisjointSets sets(g.size());
  std::vector<Edge> kept;
  for (const Edge& e : edges) {
    if (sets.unite(e.u, e.v)) kept.push_back(e);
  }

  std::vector<char> is_terminal(g.size(), 0);
  for (Vertex v : terminals) is_terminal[v] = 1;
  std::vector<std::size_t> degree(g.size(), 0);
  for (const Edge& e : kept) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<char> removed(kept.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (removed[i]) continue;
      const Edge& e = kept[i];
      const bool u_leaf = degree[e.u] == 1 && !is_terminal[e.u];
      const bool v_leaf = degree[e.v] == 1 && !is_terminal[e.v];
      if (u_leaf || v_leaf) {
        removed[i] = 1;
        --degree[e.u];
        --degree[e.v];
        changed = true;
      }
    }
  }
  std::vector<Edge> final_edges;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (!removed[i]) final_edges.push_back(kept[i]);
  }
  if (final_edges.empty()) return Tree::single(terminals.front());
  std::sort(final_edges.begin(), final_edges.end());
  return Tree::from_edges(std::move(final_edges));
}

Tree kmb_steiner(const MetricGraph& g, std::span<const Vertex> terminals) {
  const auto terms = normalized_terminals(g, terminals);
  if (terms.size() == 1) return Tree::single(terms.front());
  const MetricClosure closure = metric_closure(g);
  const Tree skeleton = prim_mst(closure.graph, terms);
  std::vector<Edge> edges;
  for (const Edge& e : skeleton.edges) append_path(closure, e.u, e.v, edges);
  return prune_to_tree(g, std::move(edges), terms);
}

Tree dreyfus_wagner(const MetricGraph& g, std::span<const Vertex> terminals,
                    std::size_t max_terminals) {
  const auto terms = normalized_terminals(g, terminals);
  if (terms.size() > max_terminals) throw std::length_error("exact solver limit exceeded");
  if (terms.size() == 1) return Tree::single(terms.front());

  const std::size_t n = g.size();
  const MetricClosure closure = metric_closure(g);
  const MetricGraph& dist = closure.graph;
  // Subsets range over all terminals but the last; the last one is the root.
  const std::size_t q = terms.size() - 1;
  const std::size_t states = std::size_t{1} << q;
  constexpr Cost kInf = std::numeric_limits<Cost>::infinity();
  std::vector<Cost> dp(states * n, kInf);
  std::vector<std::uint32_t> split(states * n, 0);
  std::vector<Vertex> via(states * n, 0);
  std::vector<Cost> merged(n);

  for (std::size_t i = 0; i < q; ++i) {
    const std::size_t mask = std::size_t{1} << i;
    for (Vertex v = 0; v < n; ++v) {
      dp[mask * n + v] = dist(terms[i], v);
      via[mask * n + v] = terms[i];
    }
  }
  for (std::size_t mask = 1; mask < states; ++mask) {
    if (std::popcount(mask) < 2) continue;
    const std::size_t low = mask & (~mask + 1);
    for (Vertex v = 0; v < n; ++v) {
      Cost best = kInf;
      std::uint32_t best_sub = 0;
      // Proper subsets containing the lowest bit, so each split is seen once.
      for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        const Cost c = dp[sub * n + v] + dp[(mask ^ sub) * n + v];
        if (c < best) {
          best = c;
          best_sub = static_cast<std::uint32_t>(sub);
        }
      }
      merged[v] = best;
      split[mask * n + v] = best_sub;
    }
    for (Vertex v = 0; v < n; ++v) {
      Cost best = kInf;
      Vertex arg = v;
      for (Vertex u = 0; u < n; ++u) {
        const Cost c = merged[u] + dist(u, v);
        if (c < best) {
          best = c;
          arg = u;
        }
      }
      dp[mask * n + v] = best;
      via[mask * n + v] = arg;
    }
  }

  std::vector<Edge> edges;
  struct Frame {
    std::size_t mask;
    Vertex v;
  };
  std::vector<Frame> stack{{states - 1, terms.back()}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const Vertex u = via[f.mask * n + f.v];
    append_path(closure, u, f.v, edges);
    if (std::popcount(f.mask) == 1) continue;
    const std::size_t sub = split[f.mask * n + u];
    stack.push_back({sub, u});
    stack.push_back({f.mask ^ sub, u});
  }
  return prune_to_tree(g, std::move(edges), terms);
}

std::unique_ptr<SteinerSolver> make_solver(std::string_view name) {
  if (name == "kmb") return std::make_unique<KmbSolver>();
  if (name == "exact") return std::make_unique<ExactSolver>();
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

}  // namespace csistp
