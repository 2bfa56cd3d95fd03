// csistp: command-line front end.
//
//   csistp solve  INSTANCE [--solver kmb|exact] [--endpoint-rule R] [--out FILE] [--dot FILE]
//   csistp verify INSTANCE SOLUTION [--mode literal|strict]
//   csistp gen    --kind euclidean|random-metric -n N -k K [--seed S] [...] [--out FILE]
//   csistp bench  CONFIG [--out FILE] [--timing] [--serial]
//
// Exit codes: 0 ok, 1 domain failure (invalid instance or solution, bound
// violated), 2 I/O or parse failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "csistp/apx.hpp"
#include "csistp/experiment.hpp"
#include "csistp/instance.hpp"
#include "csistp/io.hpp"
#include "csistp/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kIoFailure = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw csistp::ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw csistp::ParseError("cannot write '" + path + "'");
}

std::string edge_list(const std::vector<csistp::Edge>& edges) {
  std::string s;
  for (const auto& e : edges) {
    if (!s.empty()) s += ' ';
    s += "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
  }
  return s.empty() ? "-" : s;
}

struct SolveArgs {
  std::string instance;
  std::string solver = "kmb";
  std::string rule = "lexicographic";
  std::string out;
  std::string dot;
};

int cmd_solve(const SolveArgs& a) {
  const auto inst = csistp::read_instance(slurp(a.instance));
  const auto solver = csistp::make_solver(a.solver);
  const auto sol = csistp::solve_apx(inst, *solver, csistp::parse_endpoint_rule(a.rule));
  emit(a.out, csistp::write_solution(sol));
  if (!a.dot.empty()) emit(a.dot, csistp::to_dot(inst, sol));
  if (!a.out.empty() && a.out != "-") {
    std::fprintf(stderr, "total cost %.9g (local %.9g, inter-cluster %.9g), bound factor %g\n",
                 sol.total_cost, sol.local_cost, sol.inter_cost, sol.bound);
  }
  return kOk;
}

struct VerifyArgs {
  std::string instance;
  std::string solution;
  std::string mode = "literal";
};

int cmd_verify(const VerifyArgs& a) {
  const auto inst = csistp::read_instance(slurp(a.instance));
  const auto sol = csistp::read_solution(slurp(a.solution), inst.graph.size());
  const auto mode = csistp::parse_internal_mode(a.mode);
  std::optional<std::vector<csistp::Edge>> proposed;
  if (!sol.cut_edges.empty() || inst.cluster_count() == 1) proposed = sol.cut_edges;
  const auto r = csistp::verify_solution(inst, sol.tree, mode, proposed);

  std::printf("mode: %s\n", std::string(csistp::to_string(r.mode)).c_str());
  std::printf("is_tree: %s%s\n", r.is_tree ? "yes" : "no",
              r.is_tree ? "" : (" (not a tree: " + r.tree_error + ")").c_str());
  if (r.is_tree) {
    std::printf("spans_R: %s\n", r.spans_terminals ? "yes" : "no");
    std::printf("clustered: %s%s\n", r.clustered ? "yes" : "no",
                r.clustered ? "" : (" (" + r.clustered_error + ")").c_str());
    if (r.clustered) {
      std::printf("witness: %s\n", edge_list(r.witness).c_str());
      std::string bad;
      for (auto v : r.internal_violations) bad += (bad.empty() ? "" : " ") + std::to_string(v);
      std::printf("internal_ok: %s%s\n", r.internal_ok ? "yes" : "no",
                  r.internal_ok ? "" : (" (leaf vertices: " + bad + ")").c_str());
    }
    std::printf("cost: %.9g\n", r.cost);
  }
  std::printf("valid: %s\n", r.valid() ? "yes" : "no");
  return r.valid() ? kOk : kDomainFailure;
}

struct GenArgs {
  std::string kind = "euclidean";
  std::size_t n = 8;
  std::size_t k = 2;
  std::uint64_t seed = 1;
  double steiner_fraction = 0.25;
  double internal_fraction = 0.0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  csistp::ExperimentCell cell;
  cell.kind = csistp::parse_instance_kind(a.kind);
  cell.n = a.n;
  cell.k = a.k;
  cell.steiner_fraction = a.steiner_fraction;
  cell.internal_fraction = a.internal_fraction;
  emit(a.out, csistp::write_instance(csistp::make_instance(cell, a.seed)));
  return kOk;
}

struct BenchArgs {
  std::string config;
  std::string out;
  bool timing = false;
  bool serial = false;
};

int cmd_bench(const BenchArgs& a) {
  const auto cfg = csistp::read_experiment_config(slurp(a.config));
  const auto records = csistp::run_experiment(
      cfg, a.serial ? csistp::Execution::serial : csistp::Execution::parallel);
  emit(a.out, csistp::records_to_csv(records, a.timing));
  std::cerr << csistp::summarize(cfg, records);
  const auto bad = csistp::failing_records(records);
  for (const auto* r : bad) {
    std::cerr << "FAIL " << r->instance_id << " solver=" << r->solver
              << " rule=" << csistp::to_string(r->rule) << " apx=" << r->apx_cost
              << " opt=" << r->oracle_cost << " bound=" << r->bound << "\n";
  }
  return bad.empty() ? kOk : kDomainFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustered selected-internal Steiner trees: solve, verify, generate, benchmark"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run the approximation pipeline on an instance file");
  s->add_option("instance", solve.instance, "Instance file (.csistp.json)")->required();
  s->add_option("--solver", solve.solver, "Inter-cluster Steiner subroutine")
      ->check(CLI::IsMember({"kmb", "exact"}));
  s->add_option("--endpoint-rule", solve.rule, "Choice of local path endpoints")
      ->check(CLI::IsMember({"lexicographic", "cheapest-pair"}));
  s->add_option("--out", solve.out, "Solution file (default: stdout)");
  s->add_option("--dot", solve.dot, "Also write a Graphviz rendering");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a solution file against its instance");
  v->add_option("instance", verify.instance, "Instance file")->required();
  v->add_option("solution", verify.solution, "Solution file")->required();
  v->add_option("--mode", verify.mode, "Internal-vertex reading")
      ->check(CLI::IsMember({"literal", "strict"}));

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random instance");
  g->add_option("--kind", gen.kind, "Instance family")->check(CLI::IsMember({"euclidean", "random-metric"}));
  g->add_option("-n", gen.n, "Vertex count")->required();
  g->add_option("-k", gen.k, "Cluster count")->required();
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--steiner-fraction", gen.steiner_fraction, "Share of vertices left out of R");
  g->add_option("--internal-fraction", gen.internal_fraction, "Share of each cluster marked required-internal");
  g->add_option("--out", gen.out, "Instance file (default: stdout)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a ratio experiment grid against the exact oracle");
  b->add_option("config", bench.config, "Experiment config (JSON)")->required();
  b->add_option("--out", bench.out, "CSV output (default: stdout)");
  b->add_flag("--timing", bench.timing, "Append a wall_ms column (output no longer reproducible)");
  b->add_flag("--serial", bench.serial, "Run instances one at a time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoFailure;
  }

  try {
    if (s->parsed()) return cmd_solve(solve);
    if (v->parsed()) return cmd_verify(verify);
    if (g->parsed()) return cmd_gen(gen);
    if (b->parsed()) return cmd_bench(bench);
  } catch (const csistp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kIoFailure;
}
