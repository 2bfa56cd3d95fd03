#include "csistp/local_trees.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace csistp {

Tree prim_mst(const MetricGraph& g, std::span<const Vertex> s) {
  if (s.empty()) throw std::invalid_argument("empty induced set");
  std::vector<Vertex> verts(s.begin(), s.end());
  std::sort(verts.begin(), verts.end());
  const std::size_t m = verts.size();

  Tree t;
  t.vertices = verts;
  std::vector<char> in_tree(m, 0);
  std::vector<Cost> key(m, std::numeric_limits<Cost>::infinity());
  std::vector<std::size_t> parent(m, m);
  key[0] = 0.0;
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t u = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!in_tree[i] && (u == m || key[i] < key[u])) u = i;
    }
    in_tree[u] = 1;
    if (parent[u] != m) t.edges.emplace_back(verts[parent[u]], verts[u]);
    for (std::size_t i = 0; i < m; ++i) {
      if (in_tree[i]) continue;
      const Cost c = g(verts[u], verts[i]);
      if (c < key[i]) {
        key[i] = c;
        parent[i] = u;
      }
    }
  }
  return t;
}

namespace {

// Explicit-stack version of the recursion. Each task owns one piece of the
// tree, identified by a label; a tree edge belongs to the current piece iff
// both endpoints carry that label, so cutting an edge is just relabelling
// one side.
class CubePathBuilder {
 public:
  CubePathBuilder(const Tree& t, HamPathStats* stats) : stats_(stats) {
    const Vertex top = t.vertices.back() + 1;
    adj_ = tree_adjacency(t, top);
    label_.assign(top, kNone);
    for (Vertex v : t.vertices) label_[v] = 0;
    parent_.assign(top, kNone);
  }

  Path run(Vertex from, Vertex to) {
    Path out;
    std::vector<Task> stack{{from, to, 0}};
    std::size_t next_label = 1;
    while (!stack.empty()) {
      const Task task = stack.back();
      stack.pop_back();
      if (task.from == task.to) {
        out.push_back(task.from);  // single-vertex piece
        continue;
      }
      if (stats_) ++stats_->splits;
      const std::size_t other = next_label++;
      Vertex a_end;  // endpoint of the `from` side next to the join
      Vertex b_start;
      if (!adjacent(task.from, task.to, task.label)) {
        const Vertex v1 = first_step(task.from, task.to, task.label);
        relabel_side(v1, task.from, task.label, other);
        a_end = neighbour_or_self(task.from, task.label);
        b_start = v1;
      } else {
        relabel_side(task.to, task.from, task.label, other);
        a_end = neighbour_or_self(task.from, task.label);
        b_start = neighbour_or_self(task.to, other);
      }
      // Emitted in order: the `from` side first, then the other side.
      stack.push_back({b_start, task.to, other});
      stack.push_back({task.from, a_end, task.label});
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  struct Task {
    Vertex from;
    Vertex to;
    std::size_t label;
  };

  bool adjacent(Vertex a, Vertex b, std::size_t label) const {
    const auto& nb = adj_[a];
    return std::binary_search(nb.begin(), nb.end(), b) && label_[b] == label;
  }

  // Smallest-index neighbour of v inside the piece, or v if it has none.
  Vertex neighbour_or_self(Vertex v, std::size_t label) const {
    for (Vertex w : adj_[v]) {
      if (label_[w] == label) return w;
    }
    return v;
  }

  // Vertex following `from` on the tree path from `from` to `to`, found by a
  // BFS from `from` and chasing parents back from `to`.
  Vertex first_step(Vertex from, Vertex to, std::size_t label) {
    std::vector<Vertex> queue{from};
    parent_[from] = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (u == to) break;
      for (Vertex w : adj_[u]) {
        if (label_[w] == label && w != parent_[u]) {
          parent_[w] = u;
          queue.push_back(w);
        }
      }
    }
    if (stats_) stats_->vertex_visits += queue.size();
    Vertex cur = to;
    while (parent_[cur] != from) cur = parent_[cur];
    return cur;
  }

  // Moves the component of `start` (after removing edge start-blocked) to a new label.
  void relabel_side(Vertex start, Vertex blocked, std::size_t label, std::size_t fresh) {
    std::vector<Vertex> queue{start};
    label_[start] = fresh;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (Vertex w : adj_[u]) {
        if (label_[w] == label && w != blocked) {
          label_[w] = fresh;
          queue.push_back(w);
        }
      }
    }
    if (stats_) stats_->vertex_visits += queue.size();
  }

  HamPathStats* stats_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::size_t> label_;
  std::vector<Vertex> parent_;
};

}  // namespace

Path cube_ham_path(const Tree& t, Vertex from, Vertex to, HamPathStats* stats) {
  if (!t.contains(from) || !t.contains(to)) {
    throw std::invalid_argument("path endpoint is not a tree vertex");
  }
  if (from == to && t.vertices.size() > 1) {
    throw std::invalid_argument("path endpoints must differ in a tree with more than one vertex");
  }
  if (t.vertices.size() == 1) return {from};
  return CubePathBuilder(t, stats).run(from, to);
}

std::string_view to_string(EndpointRule rule) {
  switch (rule) {
    case EndpointRule::lexicographic:
      return "lexicographic";
    case EndpointRule::cheapest_pair:
      return "cheapest-pair";
  }
  return "?";
}

EndpointRule parse_endpoint_rule(std::string_view name) {
  if (name == "lexicographic") return EndpointRule::lexicographic;
  if (name == "cheapest-pair") return EndpointRule::cheapest_pair;
  throw std::invalid_argument("unknown endpoint rule '" + std::string(name) + "'");
}

LocalPath build_local_path(const MetricGraph& g, const Instance& inst, std::size_t cluster,
                           EndpointRule rule) {
  const auto& members = inst.clusters.at(cluster);
  const auto& internal = inst.required_internal.at(cluster);
  std::vector<Vertex> free;
  for (Vertex v : members) {
    if (std::find(internal.begin(), internal.end(), v) == internal.end()) free.push_back(v);
  }
  std::sort(free.begin(), free.end());

  LocalPath lp;
  lp.cluster_index = cluster;
  if (members.size() == 1) {
    if (free.empty()) throw std::invalid_argument("cluster " + std::to_string(cluster) + " is infeasible");
    lp.path = {members[0]};
    lp.endpoints = {members[0], members[0]};
    return lp;
  }
  if (free.size() < 2) {
    throw std::invalid_argument("cluster " + std::to_string(cluster) +
                                " has fewer than 2 free endpoints");
  }

  std::pair<Vertex, Vertex> ends{free[0], free[1]};
  if (rule == EndpointRule::cheapest_pair) {
    for (std::size_t i = 0; i < free.size(); ++i) {
      for (std::size_t j = i + 1; j < free.size(); ++j) {
        if (g(free[i], free[j]) < g(ends.first, ends.second)) ends = {free[i], free[j]};
      }
    }
  }

  const Tree mst = prim_mst(g, members);
  lp.mst_cost = tree_cost(g, mst);
  lp.path = cube_ham_path(mst, ends.first, ends.second);
  lp.endpoints = ends;
  lp.cost = path_cost(g, lp.path);
  return lp;
}

}  // namespace csistp
