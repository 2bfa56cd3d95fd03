#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "csistp/graph.hpp"
#include "csistp/local_trees.hpp"
#include "csistp/verify.hpp"

namespace csistp {

enum class InstanceKind { euclidean, random_metric };

std::string_view to_string(InstanceKind kind);
/// "euclidean" or "random-metric".
InstanceKind parse_instance_kind(std::string_view name);

/// One grid cell: `count` instances of the same shape.
struct ExperimentCell {
  InstanceKind kind = InstanceKind::euclidean;
  std::size_t n = 8;
  std::size_t k = 2;
  std::size_t count = 10;
  double steiner_fraction = 0.25;
  double internal_fraction = 0.0;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  bool oracle = true;
  std::size_t oracle_limit = kDefaultOracleLimit;
  std::vector<std::string> solvers{"exact", "kmb"};
  std::vector<EndpointRule> endpoint_rules{EndpointRule::lexicographic};
  std::vector<ExperimentCell> cells;
};

/// Oracle limit from CSISTP_ORACLE_LIMIT, falling back to kDefaultOracleLimit.
std::size_t default_oracle_limit();

/// JSON config: `seed`, `oracle`, `oracle_limit`, `solvers`, `endpoint_rules`,
/// and `cells` (objects with `kind`, `n`, `k`, `count`, `steiner_fraction`,
/// `internal_fraction`). Throws ParseError on malformed input and
/// ValidationError("oracle limit exceeded ...") when an oracle cell is too large.
ExperimentConfig read_experiment_config(std::string_view text);

/// Throws ValidationError if the config cannot be run as stated.
void validate_config(const ExperimentConfig& config);

/// Seed of instance `index` in cell `cell`; a pure function of its arguments.
std::uint64_t instance_seed(std::uint64_t base, std::size_t cell, std::size_t index);

Instance make_instance(const ExperimentCell& cell, std::uint64_t seed);

struct RatioRecord {
  std::string instance_id;
  InstanceKind kind = InstanceKind::euclidean;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string solver;
  EndpointRule rule = EndpointRule::lexicographic;
  Cost apx_cost = 0.0;
  bool has_oracle = false;
  bool oracle_feasible = false;
  Cost oracle_cost = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  Cost local_cost = 0.0;
  Cost inter_cost = 0.0;
  Cost mst_cost = 0.0;  // sum of cluster MST costs
  bool valid_literal = false;
  bool valid_strict = false;
  double wall_ms = 0.0;

  /// apx <= bound * opt + 1e-6 and apx >= opt - 1e-6 when an optimum is known.
  bool within_bound() const;
  /// Local cost at most twice the cluster MST total.
  bool local_doubling_ok() const;
};

/// Runs every cell, instance, solver and endpoint rule. Instances run
/// concurrently under Execution::parallel; records always come back in
/// (cell, instance, solver, rule) order.
std::vector<RatioRecord> run_experiment(const ExperimentConfig& config,
                                        Execution exec = Execution::parallel);

/// Fixed columns, 9 significant digits. `with_timing` appends wall_ms, which
/// makes the output run-dependent.
std::string records_to_csv(const std::vector<RatioRecord>& records, bool with_timing = false);

/// Per (cell, solver, rule): count, max and mean ratio, failures.
std::string summarize(const ExperimentConfig& config, const std::vector<RatioRecord>& records);

/// Records that break their guarantee or fail verification.
std::vector<const RatioRecord*> failing_records(const std::vector<RatioRecord>& records);

}  // namespace csistp
