#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nbspec/graph.hpp"

namespace nbspec {

inline constexpr std::size_t kMaxSweepVertices = 7;

/// Graphs on exactly n vertices.
struct SweepOptions {
  std::size_t n = 0;
  bool connected_only = false;
  /// One representative per isomorphism class instead of every labeling.
  bool up_to_isomorphism = false;
};

/// Bit (i, j), i < j, of an adjacency mask sits at position
/// j (j - 1) / 2 + i.
Graph graph_from_mask(std::size_t n, std::uint64_t mask);
std::uint64_t adjacency_mask(const Graph& g);

/// Minimal adjacency mask over vertex orderings compatible with a degree
/// refinement. Equal exactly for isomorphic graphs. n <= 7.
std::uint64_t canonical_mask(const Graph& g);

/// Canonical masks of every isomorphism class on n vertices, ascending.
const std::vector<std::uint64_t>& isomorphism_classes(std::size_t n);

/// Calls `visit` on each graph in a fixed order until it returns false.
/// Returns the number of graphs visited. Throws BudgetError for n > 7.
std::size_t for_each_graph(const SweepOptions& options, const std::function<bool(const Graph&)>& visit);

std::vector<Graph> sweep_graphs(const SweepOptions& options);

}  // namespace nbspec
