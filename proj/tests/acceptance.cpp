// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "csistp/apx.hpp"
#include "csistp/experiment.hpp"
#include "csistp/io.hpp"
#include "csistp/local_trees.hpp"
#include "csistp/quotient.hpp"
#include "csistp/steiner.hpp"
#include "csistp/verify.hpp"
#include "oracles.hpp"

using namespace csistp;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<Vertex> random_subset(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  auto v = iota_vertices(n);
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(m);
  std::sort(v.begin(), v.end());
  return v;
}

struct BoundStats {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::size_t internal_failures = 0;
  std::size_t clustered_failures = 0;
  double worst_exact = 0;
  double worst_kmb = 0;
};

// Criteria 1, 3 and 4 (first half) share one run over generated instances.
BoundStats run_bound_grid() {
  std::vector<ExperimentCell> cells;
  for (auto kind : {InstanceKind::euclidean, InstanceKind::random_metric})
    for (std::size_t n = 6; n <= 9; ++n)
      for (std::size_t k = 1; k <= 3; ++k)
        for (double f : {0.0, 0.3, 0.6}) cells.push_back({kind, n, k, 7, 0.25, f});

  struct Job {
    std::size_t cell;
    std::size_t index;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t i = 0; i < cells[c].count; ++i) jobs.push_back({c, i});

  std::vector<BoundStats> per(jobs.size());
  const ExactSolver exact;
  const KmbSolver kmb;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs.size()); ++j) {
    auto& s = per[j];
    const auto inst = make_instance(cells[jobs[j].cell], instance_seed(20261016, jobs[j].cell, jobs[j].index));
    const auto opt = exact_csistp(inst);
    s.instances = 1;
    if (!opt.feasible) {
      ++s.violations;
      continue;
    }
    const Cost best = opt.solution.total_cost;
    for (const SteinerSolver* solver : {static_cast<const SteinerSolver*>(&exact), static_cast<const SteinerSolver*>(&kmb)}) {
      for (auto rule : {EndpointRule::lexicographic, EndpointRule::cheapest_pair}) {
        const auto sol = solve_apx(inst, *solver, rule);
        const Cost cost = tree_cost(inst.graph, sol.tree);
        const double factor = solver->ratio() + 4;
        if (cost > factor * best + 1e-6 || cost < best - 1e-6) ++s.violations;
        const double ratio = cost / best;
        auto& worst = solver == &exact ? s.worst_exact : s.worst_kmb;
        worst = std::max(worst, ratio);

        const auto clustered = check_clustered(sol.tree, inst.clusters);
        if (!clustered.ok || !is_valid_cut(sol.tree, inst.clusters, clustered.witness) ||
            !is_valid_cut(sol.tree, inst.clusters, sol.cut_edges))
          ++s.clustered_failures;
        for (auto mode : {InternalMode::literal, InternalMode::strict}) {
          const auto chk = check_internal(sol.tree, inst.clusters, inst.required_internal, sol.cut_edges, mode);
          if (!chk.ok) ++s.internal_failures;
        }
      }
    }
  }
  BoundStats total;
  for (const auto& s : per) {
    total.instances += s.instances;
    total.violations += s.violations;
    total.internal_failures += s.internal_failures;
    total.clustered_failures += s.clustered_failures;
    total.worst_exact = std::max(total.worst_exact, s.worst_exact);
    total.worst_kmb = std::max(total.worst_kmb, s.worst_kmb);
  }
  return total;
}

void criterion_cube_path() {
  std::mt19937_64 rng(2);
  std::size_t cases = 0, bad = 0;
  double worst = 0;
  for (; cases < 1200; ++cases) {
    const std::size_t m = 1 + cases % 12;
    const auto g = oracle::random_metric(12, rng);
    const auto verts = random_subset(12, m, rng);
    const auto t = oracle::random_tree(verts, rng);
    const Vertex a = verts[rng() % m];
    Vertex b = a;
    while (m > 1 && b == a) b = verts[rng() % m];
    const auto p = cube_ham_path(t, a, b);
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted == t.vertices && p.front() == a && p.back() == b;
    const auto hops = oracle::tree_hops(t);
    for (std::size_t i = 0; ok && i + 1 < p.size(); ++i) ok = hops[p[i]][p[i + 1]] <= 3;
    const Cost tc = tree_cost(g, t);
    ok = ok && path_cost(g, p) <= 2 * tc + 1e-9;
    if (tc > 0) worst = std::max(worst, path_cost(g, p) / tc);
    if (!ok) ++bad;
  }
  report(2, bad == 0, "cube Hamiltonian path costs at most twice the tree",
         fmt("%zu random trees, %zu failures, worst path/tree %.4f", cases, bad, worst));
}

void criterion_clustered(const BoundStats& grid) {
  std::mt19937_64 rng(4);
  std::size_t cases = 0, bad = 0, positive = 0;
  for (; cases < 400; ++cases) {
    const std::size_t m = 2 + cases % 10;  // at most 10 edges
    auto verts = iota_vertices(m);
    const auto t = oracle::random_tree(verts, rng);
    std::shuffle(verts.begin(), verts.end(), rng);
    const std::size_t k = 1 + rng() % std::min<std::size_t>(4, m);
    Clusters clusters(k);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t slot = i < k ? i : rng() % (k + 2);
      if (slot < k) clusters[slot].push_back(verts[i]);
    }
    for (auto& c : clusters) std::sort(c.begin(), c.end());
    const auto fast = check_clustered(t, clusters);
    const auto slow = find_cut_brute_force(t, clusters);
    if (fast.ok != slow.has_value() || (fast.ok && !is_valid_cut(t, clusters, fast.witness))) ++bad;
    if (fast.ok) ++positive;
  }
  report(4, bad == 0 && grid.clustered_failures == 0, "APX trees are clustered; fast test matches brute force",
         fmt("%zu APX witness failures; %zu trees with <= 10 edges, %zu clustered, %zu disagreements",
             grid.clustered_failures, cases, positive, bad));
}

void criterion_steiner() {
  std::mt19937_64 rng(5);
  std::size_t ratio_cases = 0, ratio_bad = 0;
  double worst = 0;
  for (; ratio_cases < 250; ++ratio_cases) {
    const std::size_t n = 3 + ratio_cases % 7;
    const auto g = oracle::random_metric(n, rng);
    const auto t = random_subset(n, 2 + rng() % (n - 1), rng);
    const Cost a = tree_cost(g, kmb_steiner(g, t));
    const Cost b = tree_cost(g, dreyfus_wagner(g, t));
    if (a > 2 * b + 1e-9) ++ratio_bad;
    worst = std::max(worst, a / b);
  }
  std::size_t exact_cases = 0, exact_bad = 0;
  for (; exact_cases < 150; ++exact_cases) {
    const std::size_t n = 2 + exact_cases % 6;
    const auto g = exact_cases % 2 ? oracle::random_metric(n, rng) : oracle::random_graph(n, rng);
    const auto t = random_subset(n, 1 + rng() % n, rng);
    const Cost dw = tree_cost(g, dreyfus_wagner(g, t));
    const Cost brute = oracle::brute_steiner_cost(g, t);
    if (std::abs(dw - brute) > 1e-9) ++exact_bad;
  }
  report(5, ratio_bad == 0 && exact_bad == 0, "KMB within 2x Dreyfus-Wagner, Dreyfus-Wagner exact",
         fmt("%zu ratio cases (worst %.4f, %zu failures); %zu exactness cases (%zu mismatches)", ratio_cases, worst,
             ratio_bad, exact_cases, exact_bad));
}

void criterion_contraction() {
  std::size_t cases = 0, bad = 0, edges = 0;
  for (std::uint64_t seed = 1; seed <= 240; ++seed, ++cases) {
    const std::size_t n = 5 + seed % 8;
    const std::size_t k = 1 + seed % 4;
    const auto inst = seed % 2 ? gen_euclidean({.n = n, .k = k, .steiner_fraction = 0.3, .seed = seed})
                               : gen_random_metric({.n = n, .k = k, .internal_fraction = 0, .seed = seed});
    const auto q = contract_clusters(inst.graph, inst.clusters);
    const auto steiner = inst.steiner_vertices();
    std::vector<std::vector<Vertex>> members(inst.clusters);
    for (Vertex s : steiner) members.push_back({s});
    bool ok = q.graph.size() == members.size();
    for (Vertex a = 0; ok && a < members.size(); ++a) {
      for (Vertex b = a + 1; b < members.size(); ++b) {
        Cost direct = std::numeric_limits<Cost>::infinity();
        for (Vertex x : members[a])
          for (Vertex y : members[b]) direct = std::min(direct, inst.graph(x, y));
        const Edge e = expand_edge(q, a, b);
        const bool ends_ok = (std::count(members[a].begin(), members[a].end(), e.u) +
                              std::count(members[a].begin(), members[a].end(), e.v)) == 1 &&
                             (std::count(members[b].begin(), members[b].end(), e.u) +
                              std::count(members[b].begin(), members[b].end(), e.v)) == 1;
        if (q.graph(a, b) != direct || q.graph(b, a) != direct || inst.graph.cost(e) != q.graph(a, b) || !ends_ok)
          ok = false;
        ++edges;
      }
    }
    if (!ok) ++bad;
  }
  report(6, bad == 0, "quotient costs follow the min rule and expand exactly",
         fmt("%zu instances, %zu quotient edges, %zu failures", cases, edges, bad));
}

void criterion_mst() {
  std::mt19937_64 rng(7);
  std::size_t cases = 0, bad = 0;
  for (; cases < 150; ++cases) {
    const auto g = oracle::random_metric(9, rng);
    const auto s = random_subset(9, 1 + cases % 7, rng);
    const auto t = prim_mst(g, s);
    if (validate_tree(t) || t.vertices != s || std::abs(tree_cost(g, t) - oracle::brute_mst_cost(g, s)) > 1e-9) ++bad;
  }
  report(7, bad == 0, "Prim equals the brute-force minimum spanning tree",
         fmt("%zu vertex sets of size 1..7, %zu mismatches", cases, bad));
}

void criterion_determinism() {
  std::size_t checks = 0, bad = 0;
  auto expect = [&](bool ok) {
    ++checks;
    if (!ok) ++bad;
  };
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const EuclideanParams ep{.n = 9, .k = 3, .steiner_fraction = 0.3, .internal_fraction = 0.5, .seed = seed};
    const RandomMetricParams rp{.n = 9, .k = 2, .internal_fraction = 0.5, .seed = seed};
    for (const auto& inst : {gen_euclidean(ep), gen_random_metric(rp)}) {
      const auto text = write_instance(inst);
      const auto back = read_instance(text);
      expect(back == inst);
      expect(write_instance(back) == text);
      for (const char* name : {"exact", "kmb"}) {
        const auto solver = make_solver(name);
        const auto a = write_solution(solve_apx(back, *solver, EndpointRule::lexicographic, Execution::serial));
        const auto b = write_solution(solve_apx(inst, *solver, EndpointRule::lexicographic, Execution::parallel));
        expect(a == b);
        const auto reread = read_solution(a, inst.graph.size());
        expect(write_solution(reread) == a);
      }
    }
    expect(write_instance(gen_euclidean(ep)) == write_instance(gen_euclidean(ep)));
    expect(write_instance(gen_random_metric(rp)) == write_instance(gen_random_metric(rp)));
  }
  ExperimentConfig cfg;
  cfg.seed = 99;
  cfg.endpoint_rules = {EndpointRule::lexicographic, EndpointRule::cheapest_pair};
  cfg.cells = {{InstanceKind::euclidean, 8, 2, 6, 0.25, 0.4}, {InstanceKind::random_metric, 7, 3, 6, 0.25, 0.3}};
  const auto csv1 = records_to_csv(run_experiment(cfg, Execution::parallel));
  const auto csv2 = records_to_csv(run_experiment(cfg, Execution::parallel));
  const auto csv3 = records_to_csv(run_experiment(cfg, Execution::serial));
  expect(csv1 == csv2);
  expect(csv1 == csv3);
  report(8, bad == 0, "fixed seeds give byte-identical instances, solutions and CSVs",
         fmt("%zu comparisons, %zu differences", checks, bad));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  const auto grid = run_bound_grid();
  report(1, grid.instances >= 500 && grid.violations == 0, "APX within (rho+4) of the exact optimum",
         fmt("%zu instances x 2 endpoint rules, %zu violations, worst ratio exact %.4f <= 5, kmb %.4f <= 6",
             grid.instances, grid.violations, grid.worst_exact, grid.worst_kmb));
  criterion_cube_path();
  report(3, grid.internal_failures == 0, "APX solutions keep required terminals internal",
         fmt("literal and strict readings on %zu instances, %zu failures", grid.instances, grid.internal_failures));
  criterion_clustered(grid);
  criterion_steiner();
  criterion_contraction();
  criterion_mst();
  criterion_determinism();

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s: %d failing criteria, %.1f s\n", failures ? "FAILED" : "ALL PASSED", failures, secs);
  return failures ? 1 : 0;
}
