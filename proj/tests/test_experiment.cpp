#include <doctest.h>

#include "csistp/experiment.hpp"

using namespace csistp;

namespace {

const char* kConfig = R"({
  "seed": 7,
  "solvers": ["exact", "kmb"],
  "endpoint_rules": ["lexicographic", "cheapest-pair"],
  "cells": [
    {"kind": "euclidean", "n": 7, "k": 2, "count": 4, "internal_fraction": 0.5},
    {"kind": "random-metric", "n": 6, "k": 1, "count": 3}
  ]
})";

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config parsing") {
  const auto cfg = read_experiment_config(kConfig);
  CHECK(cfg.seed == 7);
  CHECK(cfg.oracle);
  REQUIRE(cfg.cells.size() == 2);
  CHECK(cfg.cells[1].kind == InstanceKind::random_metric);
  CHECK(cfg.cells[0].internal_fraction == 0.5);
  CHECK(cfg.endpoint_rules.size() == 2);

  CHECK_THROWS_AS(read_experiment_config("{}"), ParseError);
  CHECK_THROWS_AS(read_experiment_config(R"({"cells": [{"kind": "planar"}]})"), ParseError);
  CHECK_THROWS_WITH_AS(read_experiment_config(R"({"cells": [{"n": 12, "k": 2}]})"),
                       doctest::Contains("oracle limit exceeded"), ValidationError);
  CHECK_NOTHROW(read_experiment_config(R"({"oracle": false, "cells": [{"n": 12, "k": 2}]})"));
}

TEST_CASE("instance seeds are stable") {
  CHECK(instance_seed(1, 0, 0) == instance_seed(1, 0, 0));
  CHECK(instance_seed(1, 0, 0) != instance_seed(1, 0, 1));
  CHECK(instance_seed(1, 0, 0) != instance_seed(1, 1, 0));
  CHECK(instance_seed(1, 0, 0) != instance_seed(2, 0, 0));
}

TEST_CASE("records are complete and within bound") {
  const auto cfg = read_experiment_config(kConfig);
  const auto records = run_experiment(cfg, Execution::serial);
  CHECK(records.size() == (4 + 3) * 2 * 2);
  for (const auto& r : records) {
    CHECK(r.has_oracle);
    CHECK(r.oracle_feasible);
    CHECK(r.within_bound());
    CHECK(r.local_doubling_ok());
    CHECK(r.valid_literal);
    CHECK(r.valid_strict);
    CHECK(r.ratio >= 1 - 1e-9);
    CHECK(r.bound == (r.solver == "exact" ? 5 : 6));
  }
  CHECK(failing_records(records).empty());
  CHECK(summarize(cfg, records).find("euclidean") != std::string::npos);
}

TEST_CASE("CSV is deterministic and serial equals parallel") {
  const auto cfg = read_experiment_config(kConfig);
  const auto a = records_to_csv(run_experiment(cfg, Execution::serial));
  const auto b = records_to_csv(run_experiment(cfg, Execution::parallel));
  CHECK(a == b);
  CHECK(a.rfind("instance_id,kind,n,k,seed,solver,endpoint_rule,apx_cost,oracle_cost,ratio,bound,", 0) == 0);
  CHECK(a.find("wall_ms") == std::string::npos);
  CHECK(records_to_csv(run_experiment(cfg), true).find(",wall_ms\n") != std::string::npos);
}

}  // TEST_SUITE
