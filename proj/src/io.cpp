#include "csistp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json_util.hpp"

namespace csistp {

using detail::json;

std::string write_solution(const ClusteredSolution& sol) {
  std::vector<Edge> edges = sol.tree.edges;
  std::sort(edges.begin(), edges.end());
  std::vector<Edge> cuts = sol.cut_edges;
  std::sort(cuts.begin(), cuts.end());
  return detail::format_document({{"solver", sol.solver},
                                  {"bound", sol.bound},
                                  {"vertices", detail::to_json(sol.tree.vertices)},
                                  {"edges", detail::to_json(edges)},
                                  {"cut_edges", detail::to_json(cuts)},
                                  {"local_cost", quantize_cost(sol.local_cost)},
                                  {"inter_cost", quantize_cost(sol.inter_cost)},
                                  {"total_cost", quantize_cost(sol.total_cost)}},
                                 {});
}

ClusteredSolution read_solution(std::string_view text, std::size_t vertex_count) {
  const json doc = detail::parse_document(text);
  ClusteredSolution sol;
  const json& edges = detail::require_field(doc, "edges");
  sol.tree.edges = detail::edge_list(edges, "field 'edges'", vertex_count);
  if (doc.contains("vertices")) {
    sol.tree.vertices = detail::vertex_list(doc["vertices"], "field 'vertices'", vertex_count);
    std::sort(sol.tree.vertices.begin(), sol.tree.vertices.end());
  } else {
    sol.tree = Tree::from_edges(sol.tree.edges);
  }
  if (doc.contains("cut_edges")) {
    sol.cut_edges = detail::edge_list(doc["cut_edges"], "field 'cut_edges'", vertex_count);
  }
  auto cost_field = [&](const char* name) -> Cost {
    return doc.contains(name) ? detail::number(doc[name], std::string("field '") + name + "'") : 0.0;
  };
  sol.local_cost = cost_field("local_cost");
  sol.inter_cost = cost_field("inter_cost");
  sol.total_cost = cost_field("total_cost");
  sol.bound = cost_field("bound");
  if (doc.contains("solver")) {
    if (!doc["solver"].is_string()) throw ParseError("field 'solver': expected a string");
    sol.solver = doc["solver"].get<std::string>();
  }
  return sol;
}

std::string to_dot(const Instance& inst, const ClusteredSolution& sol) {
  std::ostringstream out;
  out << "graph csistp {\n";
  out << "  node [shape=circle];\n";
  std::vector<char> placed(inst.graph.size(), 0);
  for (std::size_t i = 0; i < inst.clusters.size(); ++i) {
    out << "  subgraph cluster_" << i << " {\n";
    out << "    label=\"R" << i + 1 << "\";\n";
    for (Vertex v : inst.clusters[i]) {
      const auto& req = inst.required_internal[i];
      const bool internal = std::find(req.begin(), req.end(), v) != req.end();
      out << "    " << v << (internal ? " [shape=doublecircle]" : "") << ";\n";
      placed[v] = 1;
    }
    out << "  }\n";
  }
  for (Vertex v : sol.tree.vertices) {
    if (!placed[v]) out << "  " << v << " [shape=point, xlabel=\"" << v << "\"];\n";
  }
  std::vector<Edge> edges = sol.tree.edges;
  std::sort(edges.begin(), edges.end());
  for (const Edge& e : edges) {
    const bool cut = std::find(sol.cut_edges.begin(), sol.cut_edges.end(), e) != sol.cut_edges.end();
    char label[32];
    std::snprintf(label, sizeof label, "%.6g", inst.graph.cost(e));
    out << "  " << e.u << " -- " << e.v << " [label=\"" << label << "\"" << (cut ? ", style=dashed" : "")
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace csistp
