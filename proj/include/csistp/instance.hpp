#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csistp/graph.hpp"

namespace csistp {

/// A clustered selected-internal Steiner tree instance: a complete metric
/// graph, terminal clusters R_1..R_k partitioning R, and per-cluster sets of
/// terminals that must end up as internal vertices.
struct Instance {
  MetricGraph graph;
  std::vector<std::vector<Vertex>> clusters;           // each sorted
  std::vector<std::vector<Vertex>> required_internal;  // each sorted, parallel to clusters

  std::size_t cluster_count() const noexcept { return clusters.size(); }

  /// Union of all clusters, sorted.
  std::vector<Vertex> terminals() const;

  /// Vertices outside every cluster, sorted.
  std::vector<Vertex> steiner_vertices() const;

  /// Copy with every required-internal set cleared (the plain clustered problem).
  Instance without_internal_constraints() const;

  bool operator==(const Instance&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_instance(const Instance& inst);

/// Thrown for malformed documents; carries line and field context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a well-formed document describes an infeasible instance or
/// when generator parameters cannot be satisfied.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant decimal digits, the precision of the file format.
Cost quantize_cost(Cost c);

Instance read_instance(std::string_view text);
std::string write_instance(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

struct EuclideanParams {
  std::size_t n = 8;
  std::size_t k = 2;
  double steiner_fraction = 0.25;
  double internal_fraction = 0.0;
  std::uint64_t seed = 1;
};

/// Points uniform in the unit square; terminals clustered by nearest centroid.
Instance gen_euclidean(const EuclideanParams& p);

struct RandomMetricParams {
  std::size_t n = 8;
  std::size_t k = 2;
  double internal_fraction = 0.0;
  std::uint64_t seed = 1;
  double steiner_fraction = 0.25;
};

/// Uniform [1, 10] costs closed under shortest paths; random cluster assignment.
Instance gen_random_metric(const RandomMetricParams& p);

}  // namespace csistp
