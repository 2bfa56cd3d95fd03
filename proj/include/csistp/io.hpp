#pragma once

#include <string>
#include <string_view>

#include "csistp/apx.hpp"
#include "csistp/instance.hpp"

namespace csistp {

/// Solution document in the same style as instance files:
/// `solver`, `bound`, `vertices`, `edges`, `cut_edges`, `local_cost`,
/// `inter_cost`, `total_cost`. Costs carry 12 significant digits.
std::string write_solution(const ClusteredSolution& sol);

/// Reads a solution document; vertex indices are checked against
/// `vertex_count`. Local paths are not part of the format and come back empty.
/// Throws ParseError.
ClusteredSolution read_solution(std::string_view text, std::size_t vertex_count);

/// Graphviz rendering: one `cluster_i` subgraph box per cluster,
/// required-internal terminals drawn as double circles, Steiner vertices as
/// points, and cut edges dashed.
std::string to_dot(const Instance& inst, const ClusteredSolution& sol);

}  // namespace csistp
