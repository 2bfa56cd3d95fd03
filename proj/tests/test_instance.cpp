#include <doctest.h>

#include <algorithm>
#include <string>

#include "csistp/instance.hpp"
#include "oracles.hpp"

using namespace csistp;

namespace {

Instance four_vertex() {
  Instance inst;
  inst.graph = MetricGraph::from_rows({{0}, {1, 0}, {1, 1, 0}, {1, 1, 1, 0}});
  inst.clusters = {{0, 1}, {2}};
  inst.required_internal = {{}, {}};
  return inst;
}

bool has_violation(const ValidationReport& r, const std::string& text) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("validate_instance examples") {
  auto inst = four_vertex();
  CHECK(validate_instance(inst).ok());
  CHECK(inst.terminals() == std::vector<Vertex>{0, 1, 2});
  CHECK(inst.steiner_vertices() == std::vector<Vertex>{3});

  auto overlap = inst;
  overlap.clusters = {{0, 1}, {1, 2}};
  CHECK(has_violation(validate_instance(overlap), "clusters overlap at vertex 1"));

  auto tight = inst;
  tight.required_internal = {{0}, {}};
  CHECK(has_violation(validate_instance(tight), "cluster 0 has fewer than 2 free endpoints"));

  auto whole = inst;
  whole.required_internal = {{0, 1}, {}};
  CHECK(has_violation(validate_instance(whole), "not a strict subset"));

  auto no_steiner = inst;
  no_steiner.clusters = {{0, 1}, {2, 3}};
  CHECK(has_violation(validate_instance(no_steiner), "every vertex is a terminal"));

  auto bad_metric = inst;
  bad_metric.graph = MetricGraph::from_rows({{0}, {1, 0}, {1, 5, 0}, {1, 1, 1, 0}});
  CHECK(has_violation(validate_instance(bad_metric), "graph is not metric"));
}

TEST_CASE("read_instance minimal document") {
  const auto inst = read_instance(R"({"n": 3, "costs": [[0], [1, 0], [1, 1, 0]], "clusters": [[0, 1]]})");
  CHECK(inst.cluster_count() == 1);
  CHECK(inst.required_internal.size() == 1);
  CHECK(inst.required_internal[0].empty());
  CHECK(inst.graph(2, 0) == 1);
}

TEST_CASE("read_instance rejects bad documents") {
  CHECK_THROWS_AS(read_instance("{"), ParseError);
  CHECK_THROWS_AS(read_instance(R"({"n": 3})"), ParseError);
  CHECK_THROWS_AS(read_instance(R"({"n": 2, "costs": [[0], [1, 0]], "clusters": [[0, 7]]})"), ParseError);
  CHECK_THROWS_AS(read_instance(R"({"n": 2, "costs": [[0], ["x", 0]], "clusters": [[0]]})"), ParseError);
  CHECK_THROWS_AS(read_instance(R"({"n": 3, "costs": [[0], [1, 0], [1, 1, 0]], "clusters": [[0], [0, 1]]})"),
                  ValidationError);
}

TEST_CASE("asymmetric cost matrix is reported") {
  const std::string doc = R"({"n": 3, "costs": [[0, 1, 1], [2, 0, 1], [1, 1, 0]], "clusters": [[0, 1]]})";
  CHECK_THROWS_WITH_AS(read_instance(doc), doctest::Contains("cost matrix not symmetric"), ValidationError);
}

TEST_CASE("write then read round-trips generated instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto a = gen_euclidean({.n = 6 + seed % 4, .k = 1 + seed % 3, .steiner_fraction = 0.25,
                                  .internal_fraction = 0.4, .seed = seed});
    const auto text = write_instance(a);
    const auto b = read_instance(text);
    CHECK(a == b);
    CHECK(write_instance(b) == text);

    const auto r = gen_random_metric({.n = 7, .k = 2, .internal_fraction = 0.5, .seed = seed});
    CHECK(read_instance(write_instance(r)) == r);
  }
}

TEST_CASE("gen_euclidean examples") {
  const auto inst = gen_euclidean({.n = 6, .k = 2, .steiner_fraction = 0.2, .internal_fraction = 0, .seed = 7});
  CHECK(inst.terminals().size() == 5);
  CHECK(inst.cluster_count() == 2);
  for (const auto& r : inst.required_internal) CHECK(r.empty());
  CHECK(validate_instance(inst).ok());

  CHECK_THROWS_WITH_AS(gen_euclidean({.n = 4, .k = 4, .steiner_fraction = 0.5, .seed = 1}),
                       doctest::Contains("cannot form 4 nonempty clusters from 2 terminals"), ValidationError);

  const EuclideanParams p{.n = 9, .k = 3, .steiner_fraction = 0.3, .internal_fraction = 0.5, .seed = 99};
  CHECK(gen_euclidean(p) == gen_euclidean(p));
  CHECK(write_instance(gen_euclidean(p)) == write_instance(gen_euclidean(p)));
}

TEST_CASE("gen_random_metric examples") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = gen_random_metric({.n = 8, .k = 3, .internal_fraction = 0.3, .seed = seed});
    CHECK(is_metric(inst.graph));
    CHECK(validate_instance(inst).ok());
  }
  const auto single = gen_random_metric({.n = 5, .k = 1, .internal_fraction = 0, .seed = 4});
  CHECK(single.cluster_count() == 1);
  const RandomMetricParams p{.n = 9, .k = 2, .internal_fraction = 0.5, .seed = 5};
  CHECK(gen_random_metric(p) == gen_random_metric(p));
}

TEST_CASE("generated instances always validate") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const std::size_t k = 1 + seed % 3;
    const double f = static_cast<double>(seed % 5) / 4.0;
    const auto e = gen_euclidean({.n = n, .k = k, .steiner_fraction = 0.25, .internal_fraction = f, .seed = seed});
    const auto r = gen_random_metric({.n = n, .k = k, .internal_fraction = f, .seed = seed});
    CHECK(validate_instance(e).ok());
    CHECK(validate_instance(r).ok());
    CHECK(e.cluster_count() == k);
  }
}

TEST_CASE("quantize_cost keeps 12 significant digits") {
  CHECK(quantize_cost(1.0) == 1.0);
  CHECK(quantize_cost(0.1234567890123456) == 0.123456789012);
  CHECK(quantize_cost(quantize_cost(3.14159265358979)) == quantize_cost(3.14159265358979));
}

}  // TEST_SUITE
