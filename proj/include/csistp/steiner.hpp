#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "csistp/graph.hpp"

namespace csistp {

/// Steiner tree subroutine used for the inter-cluster tree. Implementations
/// return a tree spanning all terminals with no non-terminal leaf, and carry
/// their guaranteed approximation ratio.
class SteinerSolver {
 public:
  virtual ~SteinerSolver() = default;
  virtual std::string_view name() const = 0;
  virtual double ratio() const = 0;
  virtual Tree solve(const MetricGraph& g, std::span<const Vertex> terminals) const = 0;
};

/// Kou-Markowsky-Berman 2-approximation. Works on non-metric graphs through
/// the metric closure.
Tree kmb_steiner(const MetricGraph& g, std::span<const Vertex> terminals);

inline constexpr std::size_t kDefaultDwMaxTerminals = 12;

/// Exact Dreyfus-Wagner subset DP, O(3^t n + 2^t n^2) time, O(2^t n) memory.
/// Throws std::length_error("exact solver limit exceeded") above max_terminals.
Tree dreyfus_wagner(const MetricGraph& g, std::span<const Vertex> terminals,
                    std::size_t max_terminals = kDefaultDwMaxTerminals);

class KmbSolver final : public SteinerSolver {
 public:
  std::string_view name() const override { return "kmb"; }
  double ratio() const override { return 2.0; }
  Tree solve(const MetricGraph& g, std::span<const Vertex> terminals) const override {
    return kmb_steiner(g, terminals);
  }
};

class ExactSolver final : public SteinerSolver {
 public:
  explicit ExactSolver(std::size_t max_terminals = kDefaultDwMaxTerminals)
      : max_terminals_(max_terminals) {}
  std::string_view name() const override { return "exact"; }
  double ratio() const override { return 1.0; }
  Tree solve(const MetricGraph& g, std::span<const Vertex> terminals) const override {
    return dreyfus_wagner(g, terminals, max_terminals_);
  }

 private:
  std::size_t max_terminals_;
};

/// "kmb" or "exact"; throws std::invalid_argument otherwise.
std::unique_ptr<SteinerSolver> make_solver(std::string_view name);

/// MST over the union of the given edges followed by repeated removal of
/// non-terminal leaves. Shared by both solvers to turn a union of shortest
/// paths into a pruned tree.
Tree prune_to_tree(const MetricGraph& g, std::vector<Edge> edges, std::span<const Vertex> terminals);

}  // namespace csistp
