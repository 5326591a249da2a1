#pragma once

#include <cstddef>
#include <vector>

namespace nbspec {

/// Strongly connected components of a digraph given as adjacency lists
/// (iterative Tarjan). Returns a component id per node; ids are assigned in
/// reverse topological order of the condensation.
struct SccResult {
  std::vector<std::size_t> component;
  std::size_t count = 0;
};

SccResult strongly_connected_components(const std::vector<std::vector<std::size_t>>& successors);

}  // namespace nbspec
