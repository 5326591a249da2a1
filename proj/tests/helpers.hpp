#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nbspec/graph.hpp"
#include "nbspec/linalg.hpp"

namespace nbspec::testing {

/// Exact determinant by fraction-free Gaussian elimination.
inline __int128 bareiss_determinant(std::vector<std::vector<__int128>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  __int128 sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline std::vector<std::vector<__int128>> to_int128(const Matrix& m) {
  std::vector<std::vector<__int128>> out(static_cast<std::size_t>(m.rows()),
                                         std::vector<__int128>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = static_cast<__int128>(std::llround(m(i, j)));
  return out;
}

inline __int128 ipow(__int128 base, std::size_t e) {
  __int128 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline std::size_t count_near(const std::vector<Complex>& values, Complex z, double tol = 1e-6) {
  std::size_t c = 0;
  for (const auto& v : values) c += std::abs(v - z) <= tol ? 1 : 0;
  return c;
}

/// Small named graphs used across suites.
inline std::vector<std::pair<const char*, Graph>> fixtures() {
  return {
      {"P2", path_graph(2)},
      {"P3", path_graph(3)},
      {"P5", path_graph(5)},
      {"C3", cycle_graph(3)},
      {"C4", cycle_graph(4)},
      {"C5", cycle_graph(5)},
      {"C6", cycle_graph(6)},
      {"K4", complete_graph(4)},
      {"K5", complete_graph(5)},
      {"K33", complete_bipartite_graph(3, 3)},
      {"star4", star_graph(4)},
      {"pinwheel23", pinwheel_graph(2, 3)},
      {"pinwheel24", pinwheel_graph(2, 4)},
      {"petersen", petersen_graph()},
      {"barbell", join_at_vertex(join_at_vertex(cycle_graph(3), 0, path_graph(2), 0), 3, cycle_graph(3), 0)},
      {"triangle_pendant", join_at_vertex(cycle_graph(3), 0, path_graph(2), 0)},
      {"two_triangles", disjoint_union(cycle_graph(3), cycle_graph(3))},
      {"tree8", random_tree(8, 8)},
  };
}

/// Deterministic corpus of random graphs; connected when requested.
inline std::vector<Graph> random_corpus(std::uint64_t seed, std::size_t count, std::size_t n_max, bool connected) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + rng() % (n_max - 1);
    const double p = 0.15 + 0.7 * static_cast<double>(rng() % 1000) / 1000.0;
    const std::uint64_t s = rng();
    out.push_back(connected ? random_connected_graph(s, n, p) : random_graph(s, n, p));
  }
  return out;
}

/// Connected components as standalone graphs.
inline std::vector<Graph> components(const Graph& g) {
  const auto labels = component_labels(g);
  std::size_t count = 0;
  for (const auto l : labels) count = std::max(count, l + 1);
  std::vector<std::vector<Vertex>> members(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) members[labels[v]].push_back(v);
  std::vector<Graph> out;
  for (const auto& vs : members) out.push_back(induced_subgraph(g, vs));
  return out;
}

}  // namespace nbspec::testing
