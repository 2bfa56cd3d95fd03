#include "csistp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <optional>
#include <unordered_map>
#include <limits>
#include <stdexcept>

namespace csistp {

namespace {

constexpr std::size_t kNoLabel = std::numeric_limits<std::size_t>::max();

std::size_t index_bound(const Tree& tree, const Clusters& clusters) {
  Vertex top = tree.vertices.empty() ? 0 : tree.vertices.back();
  for (const auto& c : clusters) {
    for (Vertex v : c) top = std::max(top, v);
  }
  return top + 1;
}

// BFS from `root` over the tree; returns visit order and fills parent.
std::vector<Vertex> bfs_order(const std::vector<std::vector<Vertex>>& adj, Vertex root,
                              std::vector<Vertex>& parent) {
  std::vector<Vertex> order{root};
  parent[root] = root;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex u = order[head];
    for (Vertex w : adj[u]) {
      if (w != parent[u]) {
        parent[w] = u;
        order.push_back(w);
      }
    }
  }
  return order;
}

// Membership mask of the minimal subtree spanning `terminals`.
std::vector<char> minimal_subtree_mask(const std::vector<std::vector<Vertex>>& adj,
                                       const std::vector<Vertex>& terminals) {
  const std::size_t top = adj.size();
  std::vector<char> in(top, 0);
  if (terminals.empty()) return in;
  std::vector<Vertex> parent(top, top);
  const auto order = bfs_order(adj, terminals.front(), parent);
  std::vector<std::size_t> below(top, 0);
  for (Vertex t : terminals) below[t] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != terminals.front()) below[parent[*it]] += below[*it];
  }
  // Rooted at a terminal, so a vertex lies on a terminal-terminal path iff
  // its subtree holds a terminal.
  for (Vertex v : order) in[v] = below[v] > 0 ? 1 : 0;
  return in;
}

void require_spanning(const Tree& tree, const Clusters& clusters) {
  for (const auto& c : clusters) {
    for (Vertex v : c) {
      if (!tree.contains(v)) {
        throw std::invalid_argument("tree does not span terminal " + std::to_string(v));
      }
    }
  }
}

// Labels each local-tree vertex with its cluster. Returns false (and a reason)
// if two minimal subtrees intersect.
bool label_local_trees(const std::vector<std::vector<Vertex>>& adj, const Clusters& clusters,
                       std::vector<std::size_t>& label, std::string* why) {
  label.assign(adj.size(), kNoLabel);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto mask = minimal_subtree_mask(adj, clusters[i]);
    for (Vertex v = 0; v < mask.size(); ++v) {
      if (!mask[v]) continue;
      if (label[v] != kNoLabel) {
        if (why) {
          *why = "minimal subtrees of clusters " + std::to_string(label[v]) + " and " +
                 std::to_string(i) + " share vertex " + std::to_string(v);
        }
        return false;
      }
      label[v] = i;
    }
  }
  return true;
}

// Spreads labels from already-labelled vertices to the rest by BFS, then
// returns the edges whose endpoints end up in different classes.
std::vector<Edge> cut_from_labels(const Tree& tree, const std::vector<std::vector<Vertex>>& adj,
                                  std::vector<std::size_t> label) {
  std::vector<Vertex> queue;
  for (Vertex v : tree.vertices) {
    if (label[v] != kNoLabel) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : adj[u]) {
      if (label[w] == kNoLabel) {
        label[w] = label[u];
        queue.push_back(w);
      }
    }
  }
  std::vector<Edge> cut;
  for (const Edge& e : tree.edges) {
    if (label[e.u] != label[e.v]) cut.push_back(e);
  }
  std::sort(cut.begin(), cut.end());
  return cut;
}

// Component id per vertex after removing `cut` from the tree.
std::vector<std::size_t> components_without(const Tree& tree, std::size_t top,
                                            const std::vector<Edge>& cut) {
  DisjointSets sets(top);
  for (const Edge& e : tree.edges) {
    if (std::find(cut.begin(), cut.end(), e) == cut.end()) sets.unite(e.u, e.v);
  }
  std::vector<std::size_t> comp(top);
  for (Vertex v = 0; v < top; ++v) comp[v] = sets.find(v);
  return comp;
}

bool all_in_tree(const Tree& tree, const std::vector<Edge>& edges) {
  for (const Edge& e : edges) {
    if (std::find(tree.edges.begin(), tree.edges.end(), e) == tree.edges.end()) return false;
  }
  return true;
}

// Calls f(cut) for every (k-1)-subset of tree edges in lexicographic order of
// positions until f returns true.
template <class F>
bool for_each_cut(const Tree& tree, std::size_t size, F&& f) {
  const std::size_t m = tree.edges.size();
  if (size > m) return false;
  std::vector<std::size_t> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  std::vector<Edge> cut(size);
  while (true) {
    for (std::size_t i = 0; i < size; ++i) cut[i] = tree.edges[pick[i]];
    if (f(cut)) return true;
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == m - size + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

std::vector<Vertex> minimal_subtree(const Tree& tree, const std::vector<Vertex>& terminals) {
  const std::size_t top = index_bound(tree, {terminals});
  const auto mask = minimal_subtree_mask(tree_adjacency(tree, top), terminals);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < top; ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

bool is_valid_cut(const Tree& tree, const Clusters& clusters, const std::vector<Edge>& cut) {
  const std::size_t k = clusters.size();
  if (k == 0 || cut.size() != k - 1) return false;
  std::vector<Edge> sorted_cut = cut;
  std::sort(sorted_cut.begin(), sorted_cut.end());
  if (std::adjacent_find(sorted_cut.begin(), sorted_cut.end()) != sorted_cut.end()) return false;
  if (!all_in_tree(tree, cut)) return false;
  const std::size_t top = index_bound(tree, clusters);
  const auto comp = components_without(tree, top, cut);
  std::vector<std::size_t> owner(top, kNoLabel);  // component root -> cluster
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t c = comp[clusters[i].front()];
    if (owner[c] != kNoLabel) return false;
    owner[c] = i;
    for (Vertex v : clusters[i]) {
      if (comp[v] != c) return false;
    }
  }
  return true;
}

ClusteredCheck check_clustered(const Tree& tree, const Clusters& clusters) {
  require_spanning(tree, clusters);
  ClusteredCheck out;
  const std::size_t top = index_bound(tree, clusters);
  const auto adj = tree_adjacency(tree, top);
  std::vector<std::size_t> label;
  if (!label_local_trees(adj, clusters, label, &out.counterexample)) return out;
  out.ok = true;
  out.witness = cut_from_labels(tree, adj, std::move(label));
  return out;
}

std::optional<std::vector<Edge>> find_cut_brute_force(const Tree& tree, const Clusters& clusters) {
  require_spanning(tree, clusters);
  if (clusters.empty()) return std::nullopt;
  std::optional<std::vector<Edge>> found;
  for_each_cut(tree, clusters.size() - 1, [&](const std::vector<Edge>& cut) {
    if (!is_valid_cut(tree, clusters, cut)) return false;
    found = cut;
    return true;
  });
  return found;
}

std::string_view to_string(InternalMode mode) {
  return mode == InternalMode::literal ? "literal" : "strict";
}

InternalMode parse_internal_mode(std::string_view name) {
  if (name == "literal") return InternalMode::literal;
  if (name == "strict") return InternalMode::strict;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

InternalCheck check_internal(const Tree& tree, const Clusters& clusters, const Clusters& required_internal,
                             const std::vector<Edge>& witness, InternalMode mode) {
  const std::size_t top = index_bound(tree, clusters);
  const auto adj = tree_adjacency(tree, top);
  InternalCheck out;
  if (mode == InternalMode::literal) {
    if (!is_valid_cut(tree, clusters, witness)) {
      throw std::invalid_argument("witness is not a valid cluster cut");
    }
    const auto comp = components_without(tree, top, witness);
    for (const auto& reqs : required_internal) {
      for (Vertex v : reqs) {
        std::size_t degree = 0;
        for (Vertex w : adj[v]) degree += comp[w] == comp[v] ? 1 : 0;
        if (degree < 2) out.violations.push_back(v);
      }
    }
  } else {
    for (std::size_t i = 0; i < clusters.size() && i < required_internal.size(); ++i) {
      const auto mask = minimal_subtree_mask(adj, clusters[i]);
      for (Vertex v : required_internal[i]) {
        std::size_t degree = 0;
        for (Vertex w : adj[v]) degree += mask[w] ? 1 : 0;
        if (degree < 2) out.violations.push_back(v);
      }
    }
  }
  std::sort(out.violations.begin(), out.violations.end());
  out.ok = out.violations.empty();
  return out;
}

namespace {

// Chooses, for free vertices next to "needy" required-internal vertices (those
// with fewer than two neighbours inside their own local tree), which cluster's
// component they join. The graph of needy-free adjacencies is a forest, so a
// two-state DP per node decides it exactly.
class InternalWitnessDp {
 public:
  InternalWitnessDp(const std::vector<std::vector<Vertex>>& adj, const std::vector<std::size_t>& label,
                    const Clusters& required_internal)
      : adj_(adj), label_(label), need_(adj.size(), 0), owner_(adj.size(), kNoLabel) {
    for (std::size_t i = 0; i < required_internal.size(); ++i) {
      for (Vertex v : required_internal[i]) {
        std::size_t inside = 0;
        for (Vertex w : adj_[v]) inside += label_[w] == i ? 1 : 0;
        if (inside < 2) {
          need_[v] = 2 - inside;
          owner_[v] = i;
          needy_.push_back(v);
        }
      }
    }
  }

  // Returns the claimed labels for free vertices, or nullopt if infeasible.
  std::optional<std::vector<std::size_t>> solve() {
    const std::size_t top = adj_.size();
    std::vector<std::size_t> assigned = label_;
    visited_.assign(top, 0);
    parent_.assign(top, top);
    for (Vertex start : needy_) {
      if (visited_[start]) continue;
      const auto order = collect(start);
      for (auto it = order.rbegin(); it != order.rend(); ++it) evaluate(*it);
      if (ok_without_parent(start) == false) return std::nullopt;
      assign_needy(start, false, assigned);
    }
    return assigned;
  }

 private:
  bool is_free(Vertex v) const { return label_[v] == kNoLabel; }
  bool is_needy(Vertex v) const { return need_[v] > 0; }
  bool linked(Vertex a, Vertex b) const {
    return (is_needy(a) && is_free(b)) || (is_free(a) && is_needy(b));
  }

  std::vector<Vertex> collect(Vertex root) {
    std::vector<Vertex> order{root};
    visited_[root] = 1;
    parent_[root] = root;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const Vertex u = order[head];
      for (Vertex w : adj_[u]) {
        if (!visited_[w] && linked(u, w)) {
          visited_[w] = 1;
          parent_[w] = u;
          order.push_back(w);
        }
      }
    }
    return order;
  }

  std::vector<Vertex> children(Vertex u) const {
    std::vector<Vertex> out;
    for (Vertex w : adj_[u]) {
      if (parent_[w] == u && w != u && linked(u, w)) out.push_back(w);
    }
    return out;
  }

  // For a free vertex: the set of labels (kNoLabel meaning "unclaimed") under
  // which its subtree is satisfiable. For a needy vertex: how many children
  // can serve it and whether every child is satisfiable at all.
  void evaluate(Vertex u) {
    if (is_free(u)) {
      std::vector<std::size_t> options{kNoLabel};
      for (Vertex w : adj_[u]) {
        if (is_needy(w)) options.push_back(owner_[w]);
      }
      std::sort(options.begin(), options.end());
      options.erase(std::unique(options.begin(), options.end()), options.end());
      auto& feasible = free_ok_[u];
      feasible.clear();
      for (std::size_t lab : options) {
        bool ok = true;
        for (Vertex c : children(u)) ok = ok && needy_ok(c, lab == owner_[c]);
        if (ok) feasible.push_back(lab);
      }
    } else {
      std::size_t serving = 0;
      bool all = true;
      for (Vertex c : children(u)) {
        const auto& f = free_ok_[c];
        all = all && !f.empty();
        serving += std::find(f.begin(), f.end(), owner_[u]) != f.end() ? 1 : 0;
      }
      needy_serving_[u] = serving;
      needy_all_[u] = all;
    }
  }

  bool needy_ok(Vertex v, bool parent_serves) const {
    return needy_all_.at(v) && needy_serving_.at(v) + (parent_serves ? 1 : 0) >= need_[v];
  }
  bool ok_without_parent(Vertex root) const { return needy_ok(root, false); }

  void assign_needy(Vertex v, bool parent_serves, std::vector<std::size_t>& assigned) const {
    // Serving v never hurts a child whose subtree allows it.
    (void)parent_serves;
    for (Vertex c : children(v)) {
      const auto& f = free_ok_.at(c);
      const bool serve = std::find(f.begin(), f.end(), owner_[v]) != f.end();
      assign_free(c, serve ? owner_[v] : f.front(), assigned);
    }
  }

  void assign_free(Vertex x, std::size_t lab, std::vector<std::size_t>& assigned) const {
    assigned[x] = lab;
    for (Vertex c : children(x)) assign_needy(c, lab == owner_[c], assigned);
  }

  const std::vector<std::vector<Vertex>>& adj_;
  const std::vector<std::size_t>& label_;
  std::vector<std::size_t> need_;
  std::vector<std::size_t> owner_;
  std::vector<Vertex> needy_;
  std::vector<char> visited_;
  std::vector<Vertex> parent_;
  std::unordered_map<Vertex, std::vector<std::size_t>> free_ok_;
  std::unordered_map<Vertex, std::size_t> needy_serving_;
  std::unordered_map<Vertex, bool> needy_all_;
};

}  // namespace

std::optional<std::vector<Edge>> find_internal_witness(const Tree& tree, const Clusters& clusters,
                                                       const Clusters& required_internal) {
  require_spanning(tree, clusters);
  const std::size_t top = index_bound(tree, clusters);
  const auto adj = tree_adjacency(tree, top);
  std::vector<std::size_t> label;
  if (!label_local_trees(adj, clusters, label, nullptr)) return std::nullopt;
  InternalWitnessDp dp(adj, label, required_internal);
  auto assigned = dp.solve();
  if (!assigned) return std::nullopt;
  return cut_from_labels(tree, adj, std::move(*assigned));
}

std::optional<std::vector<Edge>> find_internal_witness_brute_force(const Tree& tree,
                                                                   const Clusters& clusters,
                                                                   const Clusters& required_internal) {
  require_spanning(tree, clusters);
  if (clusters.empty()) return std::nullopt;
  std::optional<std::vector<Edge>> found;
  for_each_cut(tree, clusters.size() - 1, [&](const std::vector<Edge>& cut) {
    if (!is_valid_cut(tree, clusters, cut)) return false;
    if (!check_internal(tree, clusters, required_internal, cut, InternalMode::literal).ok) return false;
    found = cut;
    return true;
  });
  return found;
}

VerificationReport verify_solution(const Instance& inst, const Tree& tree, InternalMode mode,
                                   const std::optional<std::vector<Edge>>& proposed_cut) {
  VerificationReport r;
  r.mode = mode;
  if (auto err = validate_tree(tree)) {
    r.tree_error = *err;
    return r;
  }
  r.is_tree = true;
  if (tree.vertices.back() >= inst.graph.size()) {
    r.tree_error = "tree uses a vertex outside the graph";
    r.is_tree = false;
    return r;
  }
  r.cost = tree_cost(inst.graph, tree);
  r.spans_terminals = true;
  for (const auto& c : inst.clusters) {
    for (Vertex v : c) r.spans_terminals = r.spans_terminals && tree.contains(v);
  }
  if (!r.spans_terminals) return r;

  const ClusteredCheck cc = check_clustered(tree, inst.clusters);
  r.clustered = cc.ok;
  r.clustered_error = cc.counterexample;
  if (!cc.ok) return r;

  const bool use_proposed =
      proposed_cut && is_valid_cut(tree, inst.clusters, *proposed_cut) &&
      (mode == InternalMode::strict ||
       check_internal(tree, inst.clusters, inst.required_internal, *proposed_cut, mode).ok);
  if (use_proposed) {
    r.witness = *proposed_cut;
    std::sort(r.witness.begin(), r.witness.end());
  } else if (auto w = find_internal_witness(tree, inst.clusters, inst.required_internal)) {
    r.witness = std::move(*w);
  } else {
    r.witness = cc.witness;
  }
  const InternalCheck ic = check_internal(tree, inst.clusters, inst.required_internal, r.witness, mode);
  r.internal_ok = ic.ok;
  r.internal_violations = ic.violations;
  return r;
}

Cost local_cost_of(const MetricGraph& g, const Tree& tree, const Clusters& clusters) {
  const std::size_t top = index_bound(tree, clusters);
  const auto adj = tree_adjacency(tree, top);
  Cost total = 0.0;
  for (const auto& c : clusters) {
    const auto mask = minimal_subtree_mask(adj, c);
    for (const Edge& e : tree.edges) {
      if (mask[e.u] && mask[e.v]) total += g.cost(e);
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

namespace {

struct Candidate {
  Cost cost = std::numeric_limits<Cost>::infinity();
  std::size_t item = std::numeric_limits<std::size_t>::max();
  std::vector<Edge> edges;
  std::vector<Edge> witness;
};

struct OracleProblem {
  const Instance& inst;
  bool internal;
  std::vector<Vertex> steiner;
  std::vector<char> required;  // by vertex: required-internal
  std::vector<Vertex> terminals;
};

struct WorkItem {
  std::size_t mask;   // chosen Steiner vertices
  std::size_t first;  // first Prüfer symbol (unused when |S| < 3)
};

class PruferScan {
 public:
  PruferScan(const OracleProblem& p, const WorkItem& item) : p_(p) {
    verts_ = p.terminals;
    for (std::size_t j = 0; j < p.steiner.size(); ++j) {
      if (item.mask >> j & 1) verts_.push_back(p.steiner[j]);
    }
    std::sort(verts_.begin(), verts_.end());
    m_ = verts_.size();
    steiner_local_.assign(m_, 0);
    required_local_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      steiner_local_[i] = std::binary_search(p.terminals.begin(), p.terminals.end(), verts_[i]) ? 0 : 1;
      required_local_[i] = p.internal && p.required[verts_[i]];
    }
    cost_.resize(m_ * m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) cost_[i * m_ + j] = p.inst.graph(verts_[i], verts_[j]);
    }
    first_ = item.first;
  }

  // Scans every tree of the item; keeps the first strict minimum among
  // feasible trees, skipping those costlier than `bound`.
  void run(Candidate& best, std::size_t item_index, const std::atomic<Cost>* bound) {
    if (m_ == 1) {
      consider({}, 0.0, best, item_index, bound);
      return;
    }
    if (m_ == 2) {
      consider({{0, 1}}, cost_[1], best, item_index, bound);
      return;
    }
    const std::size_t len = m_ - 2;
    std::vector<std::size_t> seq(len, 0);
    seq[0] = first_;
    std::vector<std::size_t> degree(m_);
    std::vector<std::pair<std::size_t, std::size_t>> edges(m_ - 1);
    while (true) {
      std::fill(degree.begin(), degree.end(), 1);
      for (std::size_t x : seq) ++degree[x];
      // Steiner leaves are dropped unless they may prop up a required vertex.
      bool prune = false;
      bool leaf_needs_check = false;
      for (std::size_t i = 0; i < m_; ++i) {
        if (steiner_local_[i] && degree[i] == 1) {
          if (p_.internal) {
            leaf_needs_check = true;
          } else {
            prune = true;
            break;
          }
        }
      }
      if (!prune) {
        decode(seq, degree, edges);
        if (leaf_needs_check) prune = bad_steiner_leaf(edges, seq);
        if (!prune) {
          Cost c = 0.0;
          for (const auto& [a, b] : edges) c += cost_[a * m_ + b];
          consider(edges, c, best, item_index, bound);
        }
      }
      // Odometer over positions 1..len-1.
      std::size_t pos = len;
      while (pos > 1) {
        --pos;
        if (++seq[pos] < m_) break;
        seq[pos] = 0;
        if (pos == 1) return;
      }
      if (len == 1) return;
    }
  }

 private:
  // Linear-time Prüfer decoding; `degree` is consumed.
  void decode(const std::vector<std::size_t>& seq, std::vector<std::size_t> degree,
              std::vector<std::pair<std::size_t, std::size_t>>& edges) const {
    std::size_t ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    std::size_t leaf = ptr;
    std::size_t out = 0;
    for (std::size_t x : seq) {
      edges[out++] = {leaf, x};
      if (--degree[x] == 1 && x < ptr) {
        leaf = x;
      } else {
        ++ptr;
        while (degree[ptr] != 1) ++ptr;
        leaf = ptr;
      }
    }
    edges[out] = {leaf, m_ - 1};
  }

  bool bad_steiner_leaf(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                        const std::vector<std::size_t>& seq) const {
    std::vector<char> appears(m_, 0);
    for (std::size_t x : seq) appears[x] = 1;
    for (const auto& [a, b] : edges) {
      if (steiner_local_[a] && !appears[a] && !required_local_[b]) return true;
      if (steiner_local_[b] && !appears[b] && !required_local_[a]) return true;
    }
    return false;
  }

  void consider(const std::vector<std::pair<std::size_t, std::size_t>>& local_edges, Cost c,
                Candidate& best, std::size_t item_index, const std::atomic<Cost>* bound) {
    if (!(c < best.cost)) return;
    if (bound && c > bound->load(std::memory_order_relaxed)) return;
    std::vector<Edge> edges;
    edges.reserve(local_edges.size());
    for (const auto& [a, b] : local_edges) edges.emplace_back(verts_[a], verts_[b]);
    std::sort(edges.begin(), edges.end());
    const Tree tree = edges.empty() ? Tree::single(verts_.front()) : Tree::from_edges(edges);
    const auto& clusters = p_.inst.clusters;
    std::optional<std::vector<Edge>> witness;
    if (p_.internal) {
      witness = find_internal_witness(tree, clusters, p_.inst.required_internal);
    } else {
      ClusteredCheck cc = check_clustered(tree, clusters);
      if (cc.ok) witness = std::move(cc.witness);
    }
    if (!witness) return;
    best.cost = c;
    best.item = item_index;
    best.edges = std::move(edges);
    best.witness = std::move(*witness);
  }

  const OracleProblem& p_;
  std::vector<Vertex> verts_;
  std::size_t m_ = 0;
  std::vector<char> steiner_local_;
  std::vector<char> required_local_;
  std::vector<Cost> cost_;
  std::size_t first_ = 0;
};

void lower_bound_to(std::atomic<Cost>& bound, Cost c) {
  Cost cur = bound.load(std::memory_order_relaxed);
  while (c < cur && !bound.compare_exchange_weak(cur, c, std::memory_order_relaxed)) {
  }
}

OracleResult run_oracle(const Instance& inst, std::size_t limit, Execution exec, bool internal) {
  const std::size_t n = inst.graph.size();
  if (n > limit) throw std::length_error("oracle limit exceeded");
  if (inst.clusters.empty()) throw std::invalid_argument("instance has no clusters");

  OracleProblem p{inst, internal, inst.steiner_vertices(), std::vector<char>(n, 0), inst.terminals()};
  for (const auto& reqs : inst.required_internal) {
    for (Vertex v : reqs) p.required[v] = 1;
  }

  std::vector<WorkItem> items;
  for (std::size_t mask = 0; mask < (std::size_t{1} << p.steiner.size()); ++mask) {
    const std::size_t m = p.terminals.size() + static_cast<std::size_t>(std::popcount(mask));
    if (m < 3) {
      items.push_back({mask, 0});
    } else {
      for (std::size_t f = 0; f < m; ++f) items.push_back({mask, f});
    }
  }

  std::vector<Candidate> results(items.size());
  std::atomic<Cost> bound{std::numeric_limits<Cost>::infinity()};
  const auto count = static_cast<std::ptrdiff_t>(items.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      PruferScan(p, items[i]).run(results[i], static_cast<std::size_t>(i), &bound);
      lower_bound_to(bound, results[i].cost);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      PruferScan(p, items[i]).run(results[i], static_cast<std::size_t>(i), &bound);
      lower_bound_to(bound, results[i].cost);
    }
  }

  const Candidate* best = nullptr;
  for (const Candidate& c : results) {
    if (c.item == std::numeric_limits<std::size_t>::max()) continue;
    if (!best || c.cost < best->cost) best = &c;
  }
  OracleResult out;
  if (!best) return out;
  out.feasible = true;
  ClusteredSolution& s = out.solution;
  s.tree = best->edges.empty() ? Tree::single(p.terminals.front()) : Tree::from_edges(best->edges);
  s.cut_edges = best->witness;
  s.total_cost = best->cost;
  s.local_cost = local_cost_of(inst.graph, s.tree, inst.clusters);
  s.inter_cost = s.total_cost - s.local_cost;
  s.solver = internal ? "oracle-csistp" : "oracle-cstp";
  return out;
}

}  // namespace

OracleResult exact_csistp(const Instance& inst, std::size_t limit, Execution exec) {
  return run_oracle(inst, limit, exec, true);
}

OracleResult exact_cstp(const Instance& inst, std::size_t limit, Execution exec) {
  return run_oracle(inst, limit, exec, false);
}

}  // namespace csistp
