#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "csistp/graph.hpp"
#include "csistp/instance.hpp"

namespace csistp::detail {

using json = nlohmann::json;

json parse_document(std::string_view text);

const json& require_field(const json& doc, const char* name);

std::vector<Vertex> vertex_list(const json& arr, const std::string& where, std::size_t n);
std::vector<std::vector<Vertex>> vertex_lists(const json& arr, const std::string& where, std::size_t n);
std::vector<Edge> edge_list(const json& arr, const std::string& where, std::size_t n);
Cost number(const json& v, const std::string& where);

json to_json(const std::vector<Vertex>& vs);
json to_json(const std::vector<std::vector<Vertex>>& vss);
json to_json(const std::vector<Edge>& es);

/// One top-level field per line; nested values are dumped compactly except
/// for arrays listed in `row_fields`, which get one element per line.
std::string format_document(const std::vector<std::pair<std::string, json>>& fields,
                            const std::vector<std::string>& row_fields);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace csistp::detail
