#include "csistp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "json_util.hpp"
#include "random.hpp"

namespace csistp {

std::vector<Vertex> Instance::terminals() const {
  std::vector<Vertex> r;
  for (const auto& c : clusters) r.insert(r.end(), c.begin(), c.end());
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::vector<Vertex> Instance::steiner_vertices() const {
  const auto r = terminals();
  std::vector<Vertex> s;
  for (Vertex v = 0; v < graph.size(); ++v) {
    if (!std::binary_search(r.begin(), r.end(), v)) s.push_back(v);
  }
  return s;
}

Instance Instance::without_internal_constraints() const {
  Instance copy = *this;
  for (auto& r : copy.required_internal) r.clear();
  return copy;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t n = inst.graph.size();
  const std::size_t k = inst.clusters.size();
  if (k == 0) out.push_back("instance has no clusters");
  if (inst.required_internal.size() != k) {
    out.push_back("required_internal has " + std::to_string(inst.required_internal.size()) +
                  " entries for " + std::to_string(k) + " clusters");
  }
  std::vector<std::size_t> owner(n, k);
  std::size_t terminal_count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& cluster = inst.clusters[i];
    const std::string name = "cluster " + std::to_string(i);
    if (cluster.empty()) out.push_back(name + " is empty");
    for (Vertex v : cluster) {
      if (v >= n) {
        out.push_back(name + " contains vertex " + std::to_string(v) + " outside the graph");
      } else if (owner[v] == i) {
        out.push_back(name + " lists vertex " + std::to_string(v) + " twice");
      } else if (owner[v] != k) {
        out.push_back("clusters overlap at vertex " + std::to_string(v));
      } else {
        owner[v] = i;
        ++terminal_count;
      }
    }
    if (i >= inst.required_internal.size()) continue;
    const auto& internal = inst.required_internal[i];
    std::size_t inside = 0;
    for (Vertex v : internal) {
      if (std::find(cluster.begin(), cluster.end(), v) == cluster.end()) {
        out.push_back("required-internal vertex " + std::to_string(v) + " of " + name +
                      " is not in the cluster");
      } else {
        ++inside;
      }
    }
    std::vector<Vertex> distinct(internal);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (!cluster.empty() && distinct.size() >= cluster.size()) {
      out.push_back("required-internal set of " + name + " is not a strict subset");
    } else if (cluster.size() >= 2 && inside == distinct.size() &&
               cluster.size() - distinct.size() < 2) {
      out.push_back(name + " has fewer than 2 free endpoints");
    }
  }
  if (k > 0 && terminal_count >= n) {
    out.push_back("every vertex is a terminal; at least one Steiner vertex is required");
  }
  if (!is_metric(inst.graph)) out.push_back("graph is not metric");
  return report;
}

Cost quantize_cost(Cost c) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", c);
  return std::strtod(buf, nullptr);
}

namespace {

using detail::json;

std::vector<Vertex> sorted(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Instance read_instance(std::string_view text) {
  const json doc = detail::parse_document(text);
  const json& n_field = detail::require_field(doc, "n");
  if (!n_field.is_number_integer() || n_field.get<long long>() < 1) {
    throw ParseError("field 'n': expected a positive integer");
  }
  const auto n = n_field.get<std::size_t>();
  const json& rows_field = detail::require_field(doc, "costs");
  if (!rows_field.is_array() || rows_field.size() != n) {
    throw ParseError("field 'costs': expected " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<Cost>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows_field[i];
    const std::string where = "field 'costs' row " + std::to_string(i);
    if (!row.is_array()) throw ParseError(where + ": expected an array");
    for (std::size_t j = 0; j < row.size(); ++j) {
      rows[i].push_back(detail::number(row[j], where + " entry " + std::to_string(j)));
    }
  }

  Instance inst;
  try {
    inst.graph = MetricGraph::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  inst.clusters = detail::vertex_lists(detail::require_field(doc, "clusters"), "field 'clusters'", n);
  if (doc.contains("required_internal")) {
    inst.required_internal =
        detail::vertex_lists(doc["required_internal"], "field 'required_internal'", n);
  } else {
    inst.required_internal.assign(inst.clusters.size(), {});
  }
  for (auto& c : inst.clusters) c = sorted(std::move(c));
  for (auto& r : inst.required_internal) r = sorted(std::move(r));

  const auto report = validate_instance(inst);
  if (!report.ok()) {
    std::string msg = "invalid instance:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  return inst;
}

std::string write_instance(const Instance& inst) {
  const std::size_t n = inst.graph.size();
  json rows = json::array();
  for (Vertex i = 0; i < n; ++i) {
    json row = json::array();
    for (Vertex j = 0; j <= i; ++j) row.push_back(quantize_cost(inst.graph(i, j)));
    rows.push_back(std::move(row));
  }
  return detail::format_document({{"n", n},
                                  {"costs", rows},
                                  {"clusters", detail::to_json(inst.clusters)},
                                  {"required_internal", detail::to_json(inst.required_internal)}},
                                 {"costs"});
}

Instance load_instance(const std::string& path) { return read_instance(detail::read_file(path)); }

void save_instance(const Instance& inst, const std::string& path) {
  detail::write_file(path, write_instance(inst));
}

namespace {

void check_common(std::size_t k, double internal_fraction) {
  if (k < 1) throw ValidationError("k must be at least 1");
  if (!(internal_fraction >= 0.0 && internal_fraction <= 1.0)) {
    throw ValidationError("internal_fraction must lie in [0, 1]");
  }
}

std::size_t steiner_count(std::size_t n, std::size_t k, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ValidationError("steiner_fraction must lie in [0, 1)");
  }
  const auto s = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * n)));
  if (s >= n || n - s < k) {
    throw ValidationError("cannot form " + std::to_string(k) + " nonempty clusters from " +
                          std::to_string(s >= n ? 0 : n - s) + " terminals");
  }
  return s;
}

// Marks up to floor(fraction * |R_i|) members of each cluster as required
// internal, keeping at least two free members.
std::vector<std::vector<Vertex>> pick_internal(const std::vector<std::vector<Vertex>>& clusters,
                                               double fraction, detail::Rng& rng) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& cluster : clusters) {
    const std::size_t size = cluster.size();
    std::size_t m = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(size)));
    m = size >= 2 ? std::min(m, size - 2) : 0;
    std::vector<Vertex> pool = cluster;
    for (std::size_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + rng.below(size - i)]);
    pool.resize(m);
    out.push_back(sorted(std::move(pool)));
  }
  return out;
}

}  // namespace

Instance gen_euclidean(const EuclideanParams& p) {
  check_common(p.k, p.internal_fraction);
  const std::size_t s = steiner_count(p.n, p.k, p.steiner_fraction);
  detail::Rng rng(p.seed);

  std::vector<double> x(p.n), y(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.uniform();
  }
  std::vector<Cost> costs(p.n * p.n, 0.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = i + 1; j < p.n; ++j) {
      const Cost d = quantize_cost(std::hypot(x[i] - x[j], y[i] - y[j]));
      costs[i * p.n + j] = d;
      costs[j * p.n + i] = d;
    }
  }

  std::vector<Vertex> order(p.n);
  for (std::size_t i = 0; i < p.n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<Vertex> terms(order.begin() + static_cast<std::ptrdiff_t>(s), order.end());

  // Lloyd iterations seeded with the first k terminals of the shuffled order.
  std::vector<double> cx(p.k), cy(p.k);
  for (std::size_t c = 0; c < p.k; ++c) {
    cx[c] = x[terms[c]];
    cy[c] = y[terms[c]];
  }
  auto sq = [&](Vertex v, std::size_t c) {
    return (x[v] - cx[c]) * (x[v] - cx[c]) + (y[v] - cy[c]) * (y[v] - cy[c]);
  };
  std::vector<std::size_t> assign(p.n, p.k);
  for (int iter = 0; iter < 10; ++iter) {
    for (Vertex v : terms) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < p.k; ++c) {
        if (sq(v, c) < sq(v, best)) best = c;
      }
      assign[v] = best;
    }
    for (std::size_t c = 0; c < p.k; ++c) {
      double sx = 0, sy = 0;
      std::size_t cnt = 0;
      for (Vertex v : terms) {
        if (assign[v] == c) {
          sx += x[v];
          sy += y[v];
          ++cnt;
        }
      }
      if (cnt > 0) {
        cx[c] = sx / static_cast<double>(cnt);
        cy[c] = sy / static_cast<double>(cnt);
      }
    }
  }
  // Rebalance: an empty cluster takes the terminal nearest its centroid from
  // a cluster that can spare one.
  std::vector<std::size_t> sizes(p.k, 0);
  for (Vertex v : terms) ++sizes[assign[v]];
  for (std::size_t c = 0; c < p.k; ++c) {
    if (sizes[c] > 0) continue;
    Vertex pick = p.n;
    for (Vertex v : terms) {
      if (sizes[assign[v]] < 2) continue;
      if (pick == p.n || sq(v, c) < sq(pick, c) || (sq(v, c) == sq(pick, c) && v < pick)) pick = v;
    }
    --sizes[assign[pick]];
    assign[pick] = c;
    ++sizes[c];
  }

  Instance inst;
  inst.graph = MetricGraph(p.n, std::move(costs));
  inst.clusters.assign(p.k, {});
  for (Vertex v = 0; v < p.n; ++v) {
    if (assign[v] < p.k) inst.clusters[assign[v]].push_back(v);
  }
  inst.required_internal = pick_internal(inst.clusters, p.internal_fraction, rng);
  return inst;
}

Instance gen_random_metric(const RandomMetricParams& p) {
  check_common(p.k, p.internal_fraction);
  const std::size_t s = steiner_count(p.n, p.k, p.steiner_fraction);
  detail::Rng rng(p.seed);

  std::vector<Cost> raw(p.n * p.n, 0.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = i + 1; j < p.n; ++j) {
      const Cost c = rng.uniform(1.0, 10.0);
      raw[i * p.n + j] = c;
      raw[j * p.n + i] = c;
    }
  }
  const MetricClosure closure = metric_closure(MetricGraph(p.n, std::move(raw)));
  std::vector<Cost> costs = closure.graph.matrix();
  for (Cost& c : costs) c = quantize_cost(c);

  std::vector<Vertex> order(p.n);
  for (std::size_t i = 0; i < p.n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<Vertex> terms(order.begin() + static_cast<std::ptrdiff_t>(s), order.end());
  rng.shuffle(terms);

  Instance inst;
  inst.graph = MetricGraph(p.n, std::move(costs));
  inst.clusters.assign(p.k, {});
  for (std::size_t i = 0; i < terms.size(); ++i) {
    inst.clusters[i < p.k ? i : rng.below(p.k)].push_back(terms[i]);
  }
  for (auto& c : inst.clusters) c = sorted(std::move(c));
  inst.required_internal = pick_internal(inst.clusters, p.internal_fraction, rng);
  return inst;
}

}  // namespace csistp
