#include "csistp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "csistp/apx.hpp"
#include "json_util.hpp"
#include "random.hpp"

namespace csistp {

using detail::json;

std::string_view to_string(InstanceKind kind) {
  return kind == InstanceKind::euclidean ? "euclidean" : "random-metric";
}

InstanceKind parse_instance_kind(std::string_view name) {
  if (name == "euclidean") return InstanceKind::euclidean;
  if (name == "random-metric") return InstanceKind::random_metric;
  throw std::invalid_argument("unknown instance kind '" + std::string(name) + "'");
}

std::size_t default_oracle_limit() {
  if (const char* env = std::getenv("CSISTP_ORACLE_LIMIT")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultOracleLimit;
}

namespace {

std::size_t size_field(const json& obj, const char* name, std::size_t fallback, const std::string& where) {
  if (!obj.contains(name)) return fallback;
  const json& v = obj[name];
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(where + "." + name + ": expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double real_field(const json& obj, const char* name, double fallback, const std::string& where) {
  if (!obj.contains(name)) return fallback;
  return detail::number(obj[name], where + "." + name);
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const json& s : v) {
    if (!s.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

ExperimentConfig read_experiment_config(std::string_view text) {
  const json doc = detail::parse_document(text);
  if (!doc.is_object()) throw ParseError("config root must be an object");
  ExperimentConfig cfg;
  cfg.oracle_limit = default_oracle_limit();
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer()) throw ParseError("config.seed: expected an integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("oracle")) {
    if (!doc["oracle"].is_boolean()) throw ParseError("config.oracle: expected a boolean");
    cfg.oracle = doc["oracle"].get<bool>();
  }
  cfg.oracle_limit = size_field(doc, "oracle_limit", cfg.oracle_limit, "config");
  try {
    if (doc.contains("solvers")) cfg.solvers = string_list(doc["solvers"], "config.solvers");
    for (const auto& s : cfg.solvers) make_solver(s);
    if (doc.contains("endpoint_rules")) {
      cfg.endpoint_rules.clear();
      for (const auto& r : string_list(doc["endpoint_rules"], "config.endpoint_rules")) {
        cfg.endpoint_rules.push_back(parse_endpoint_rule(r));
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  const json& cells = detail::require_field(doc, "cells");
  if (!cells.is_array()) throw ParseError("config.cells: expected an array");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const json& c = cells[i];
    const std::string where = "config.cells[" + std::to_string(i) + "]";
    if (!c.is_object()) throw ParseError(where + ": expected an object");
    ExperimentCell cell;
    if (c.contains("kind")) {
      if (!c["kind"].is_string()) throw ParseError(where + ".kind: expected a string");
      try {
        cell.kind = parse_instance_kind(c["kind"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(where + ".kind: " + e.what());
      }
    }
    cell.n = size_field(c, "n", cell.n, where);
    cell.k = size_field(c, "k", cell.k, where);
    cell.count = size_field(c, "count", cell.count, where);
    cell.steiner_fraction = real_field(c, "steiner_fraction", cell.steiner_fraction, where);
    cell.internal_fraction = real_field(c, "internal_fraction", cell.internal_fraction, where);
    cfg.cells.push_back(cell);
  }
  validate_config(cfg);
  return cfg;
}

void validate_config(const ExperimentConfig& config) {
  if (config.solvers.empty()) throw ValidationError("config lists no solvers");
  if (config.endpoint_rules.empty()) throw ValidationError("config lists no endpoint rules");
  for (std::size_t i = 0; i < config.cells.size(); ++i) {
    if (config.oracle && config.cells[i].n > config.oracle_limit) {
      throw ValidationError("oracle limit exceeded: cell " + std::to_string(i) + " has n=" +
                            std::to_string(config.cells[i].n) + " > " +
                            std::to_string(config.oracle_limit));
    }
  }
}

std::uint64_t instance_seed(std::uint64_t base, std::size_t cell, std::size_t index) {
  using detail::Rng;
  return Rng::splitmix(Rng::splitmix(base ^ Rng::splitmix(cell + 1)) + index);
}

Instance make_instance(const ExperimentCell& cell, std::uint64_t seed) {
  if (cell.kind == InstanceKind::euclidean) {
    return gen_euclidean({cell.n, cell.k, cell.steiner_fraction, cell.internal_fraction, seed});
  }
  return gen_random_metric({cell.n, cell.k, cell.internal_fraction, seed, cell.steiner_fraction});
}

bool RatioRecord::within_bound() const {
  if (!has_oracle || !oracle_feasible) return true;
  return apx_cost <= bound * oracle_cost + 1e-6 && apx_cost >= oracle_cost - 1e-6;
}

bool RatioRecord::local_doubling_ok() const { return local_cost <= 2.0 * mst_cost + 1e-9; }

namespace {

std::vector<RatioRecord> run_instance(const ExperimentConfig& config, std::size_t cell_index,
                                      std::size_t index) {
  const ExperimentCell& cell = config.cells[cell_index];
  const std::uint64_t seed = instance_seed(config.seed, cell_index, index);
  const Instance inst = make_instance(cell, seed);
  const std::string id = "c" + std::to_string(cell_index) + "-i" + std::to_string(index);

  OracleResult opt;
  if (config.oracle) opt = exact_csistp(inst, config.oracle_limit, Execution::serial);

  std::vector<RatioRecord> out;
  for (const auto& solver_name : config.solvers) {
    const auto solver = make_solver(solver_name);
    for (EndpointRule rule : config.endpoint_rules) {
      const auto start = std::chrono::steady_clock::now();
      const ClusteredSolution sol = solve_apx(inst, *solver, rule, Execution::serial);
      const auto stop = std::chrono::steady_clock::now();

      RatioRecord r;
      r.instance_id = id;
      r.kind = cell.kind;
      r.n = cell.n;
      r.k = cell.k;
      r.seed = seed;
      r.solver = solver_name;
      r.rule = rule;
      r.apx_cost = sol.total_cost;
      r.bound = sol.bound;
      r.local_cost = sol.local_cost;
      r.inter_cost = sol.inter_cost;
      for (const auto& lp : sol.local_paths) r.mst_cost += lp.mst_cost;
      r.has_oracle = config.oracle;
      r.oracle_feasible = opt.feasible;
      if (opt.feasible) {
        r.oracle_cost = opt.solution.total_cost;
        r.ratio = r.oracle_cost > 0.0 ? r.apx_cost / r.oracle_cost : (r.apx_cost > 0.0 ? INFINITY : 1.0);
      }
      r.valid_literal = verify_solution(inst, sol.tree, InternalMode::literal, sol.cut_edges).valid();
      r.valid_strict = verify_solution(inst, sol.tree, InternalMode::strict, sol.cut_edges).valid();
      r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

std::vector<RatioRecord> run_experiment(const ExperimentConfig& config, Execution exec) {
  validate_config(config);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t c = 0; c < config.cells.size(); ++c) {
    for (std::size_t i = 0; i < config.cells[c].count; ++i) jobs.emplace_back(c, i);
  }
  std::vector<std::vector<RatioRecord>> buffered(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
  auto job = [&](std::ptrdiff_t j) {
    try {
      buffered[j] = run_instance(config, jobs[j].first, jobs[j].second);
    } catch (const std::exception& e) {
      errors[j] = "instance c" + std::to_string(jobs[j].first) + "-i" + std::to_string(jobs[j].second) +
                  ": " + e.what();
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < count; ++j) job(j);
  } else {
    for (std::ptrdiff_t j = 0; j < count; ++j) job(j);
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  std::vector<RatioRecord> records;
  for (auto& b : buffered) {
    for (auto& r : b) records.push_back(std::move(r));
  }
  return records;
}

std::string records_to_csv(const std::vector<RatioRecord>& records, bool with_timing) {
  std::ostringstream out;
  out << "instance_id,kind,n,k,seed,solver,endpoint_rule,apx_cost,oracle_cost,ratio,bound,"
         "local_cost,inter_cost,mst_cost,valid_literal,valid_strict,within_bound";
  if (with_timing) out << ",wall_ms";
  out << "\n";
  for (const auto& r : records) {
    out << r.instance_id << ',' << to_string(r.kind) << ',' << r.n << ',' << r.k << ',' << r.seed << ','
        << r.solver << ',' << to_string(r.rule) << ',' << fmt9(r.apx_cost) << ','
        << (r.has_oracle && r.oracle_feasible ? fmt9(r.oracle_cost) : "") << ','
        << (r.has_oracle && r.oracle_feasible ? fmt9(r.ratio) : "") << ',' << fmt9(r.bound) << ','
        << fmt9(r.local_cost) << ',' << fmt9(r.inter_cost) << ',' << fmt9(r.mst_cost) << ','
        << (r.valid_literal ? 1 : 0) << ',' << (r.valid_strict ? 1 : 0) << ',' << (r.within_bound() ? 1 : 0);
    if (with_timing) out << ',' << fmt9(r.wall_ms);
    out << "\n";
  }
  return out.str();
}

std::vector<const RatioRecord*> failing_records(const std::vector<RatioRecord>& records) {
  std::vector<const RatioRecord*> bad;
  for (const auto& r : records) {
    if (!r.within_bound() || !r.valid_literal || !r.valid_strict || !r.local_doubling_ok() ||
        (r.has_oracle && !r.oracle_feasible)) {
      bad.push_back(&r);
    }
  }
  return bad;
}

std::string summarize(const ExperimentConfig& config, const std::vector<RatioRecord>& records) {
  struct Acc {
    std::size_t count = 0;
    double max_ratio = 0.0;
    double sum_ratio = 0.0;
    std::size_t failures = 0;
  };
  std::map<std::tuple<std::size_t, std::string, std::string>, Acc> acc;
  const auto bad = failing_records(records);
  for (const auto& r : records) {
    const auto dash = r.instance_id.find('-');
    const std::size_t cell = std::stoul(r.instance_id.substr(1, dash - 1));
    Acc& a = acc[{cell, r.solver, std::string(to_string(r.rule))}];
    ++a.count;
    a.max_ratio = std::max(a.max_ratio, r.ratio);
    a.sum_ratio += r.ratio;
    if (std::find(bad.begin(), bad.end(), &r) != bad.end()) ++a.failures;
  }
  std::ostringstream out;
  out << "cell kind n k solver endpoint_rule count max_ratio mean_ratio bound failures\n";
  for (const auto& [key, a] : acc) {
    const auto& [cell, solver, rule] = key;
    const ExperimentCell& c = config.cells[cell];
    out << cell << ' ' << to_string(c.kind) << ' ' << c.n << ' ' << c.k << ' ' << solver << ' ' << rule << ' '
        << a.count << ' ' << fmt9(a.max_ratio) << ' ' << fmt9(a.count ? a.sum_ratio / a.count : 0.0) << ' '
        << fmt9(theoretical_bound(make_solver(solver)->ratio())) << ' ' << a.failures << "\n";
  }
  return out.str();
}

}  // namespace csistp
