#include "json_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace csistp::detail {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

const json& require_field(const json& doc, const char* name) {
  if (!doc.is_object()) throw ParseError("document root must be an object");
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

Cost number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<Cost>();
}

std::vector<Vertex> vertex_list(const json& arr, const std::string& where, std::size_t n) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of vertex indices");
  std::vector<Vertex> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& x = arr[i];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!x.is_number_integer() || x.get<long long>() < 0) {
      throw ParseError(at + ": expected a nonnegative integer");
    }
    const auto v = x.get<unsigned long long>();
    if (v >= n) throw ParseError(at + ": vertex " + std::to_string(v) + " out of range");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<std::vector<Vertex>> vertex_lists(const json& arr, const std::string& where,
                                              std::size_t n) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of arrays");
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(vertex_list(arr[i], where + "[" + std::to_string(i) + "]", n));
  }
  return out;
}

std::vector<Edge> edge_list(const json& arr, const std::string& where, std::size_t n) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of edges");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const auto ends = vertex_list(arr[i], at, n);
    if (ends.size() != 2) throw ParseError(at + ": an edge needs exactly two endpoints");
    out.emplace_back(ends[0], ends[1]);
  }
  return out;
}

json to_json(const std::vector<Vertex>& vs) {
  json arr = json::array();
  for (Vertex v : vs) arr.push_back(v);
  return arr;
}

json to_json(const std::vector<std::vector<Vertex>>& vss) {
  json arr = json::array();
  for (const auto& vs : vss) arr.push_back(to_json(vs));
  return arr;
}

json to_json(const std::vector<Edge>& es) {
  json arr = json::array();
  for (const Edge& e : es) arr.push_back(json::array({e.u, e.v}));
  return arr;
}

std::string format_document(const std::vector<std::pair<std::string, json>>& fields,
                            const std::vector<std::string>& row_fields) {
  std::ostringstream out;
  out << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto& [name, value] = fields[i];
    out << "  " << json(name).dump() << ": ";
    const bool rows = value.is_array() && !value.empty() &&
                      std::find(row_fields.begin(), row_fields.end(), name) != row_fields.end();
    if (rows) {
      out << "[\n";
      for (std::size_t r = 0; r < value.size(); ++r) {
        out << "    " << value[r].dump() << (r + 1 < value.size() ? ",\n" : "\n");
      }
      out << "  ]";
    } else {
      out << value.dump();
    }
    out << (i + 1 < fields.size() ? ",\n" : "\n");
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("failed writing '" + path + "'");
}

}  // namespace csistp::detail
