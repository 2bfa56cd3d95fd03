#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace csistp {

using Vertex = std::size_t;
using Cost = double;

/// Absolute tolerance used for every cost comparison in the library.
inline constexpr Cost kMetricEps = 1e-9;

/// Selects the serial reference kernel or its OpenMP counterpart.
/// Both produce bit-identical results.
enum class Execution { serial, parallel };

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Complete undirected graph on vertices 0..n-1 with a dense symmetric cost
/// matrix. Shape (zero diagonal, symmetry, nonnegativity) is validated on
/// construction; the triangle inequality is only checked on request since
/// quotient graphs legitimately violate it.
class MetricGraph {
 public:
  MetricGraph() = default;

  /// Row-major n*n matrix. Throws std::invalid_argument on bad shape.
  MetricGraph(std::size_t n, std::vector<Cost> costs);

  /// Nested rows, either full square or lower triangle including the diagonal.
  static MetricGraph from_rows(const std::vector<std::vector<Cost>>& rows);

  std::size_t size() const noexcept { return n_; }
  Cost operator()(Vertex u, Vertex v) const noexcept { return costs_[u * n_ + v]; }
  Cost cost(const Edge& e) const noexcept { return (*this)(e.u, e.v); }
  std::span<const Cost> row(Vertex u) const noexcept {
    return {costs_.data() + u * n_, n_};
  }
  const std::vector<Cost>& matrix() const noexcept { return costs_; }

  bool operator==(const MetricGraph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Cost> costs_;
};

/// Tree over a vertex subset of some graph. This is a plain value; use
/// validate_tree() to check the structural invariants.
struct Tree {
  std::vector<Vertex> vertices;  // sorted, distinct
  std::vector<Edge> edges;

  static Tree single(Vertex v) { return Tree{{v}, {}}; }

  /// Builds a tree from an edge list, deriving the sorted vertex set.
  static Tree from_edges(std::vector<Edge> edges);

  bool contains(Vertex v) const;

  bool operator==(const Tree&) const = default;
};

/// Ordered vertex sequence; a Hamiltonian path when it covers its vertex set.
using Path = std::vector<Vertex>;

/// Returns an explanation if `t` is not a tree (wrong edge count, cycle,
/// disconnected, self-loop, duplicate edge, endpoint outside vertices).
std::optional<std::string> validate_tree(const Tree& t);

/// True iff every ordered triple satisfies the triangle inequality within kMetricEps.
bool is_metric(const MetricGraph& g);

/// All-pairs shortest paths plus a predecessor table for path recovery.
struct MetricClosure {
  MetricGraph graph;
  /// pred[s * n + v] is the vertex before v on the chosen shortest s->v path
  /// (pred[s * n + s] == s).
  std::vector<Vertex> pred;

  /// Shortest path from s to t as a vertex sequence starting at s.
  Path path(Vertex s, Vertex t) const;
};

/// Dense Dijkstra from every source. Distances within kMetricEps count as ties,
/// broken by fewer edges and then by the smaller predecessor index.
MetricClosure metric_closure(const MetricGraph& g, Execution exec = Execution::serial);

Cost tree_cost(const MetricGraph& g, const Tree& t);
Cost tree_cost(const MetricGraph& g, std::span<const Edge> edges);
Cost path_cost(const MetricGraph& g, std::span<const Vertex> path);

struct InducedSubgraph {
  MetricGraph graph;
  std::vector<Vertex> to_parent;  // local index -> parent index
};

/// Complete graph on `s` (in the given order) with inherited costs.
/// Throws std::invalid_argument("empty induced set") for empty s.
InducedSubgraph induced_subgraph(const MetricGraph& g, std::span<const Vertex> s);

/// Adjacency lists of a tree, indexed by graph vertex (size = n).
std::vector<std::vector<Vertex>> tree_adjacency(const Tree& t, std::size_t n);

/// Minimal union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  Vertex find(Vertex x);
  bool unite(Vertex a, Vertex b);

 private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> rank_;
};

}  // namespace csistp
