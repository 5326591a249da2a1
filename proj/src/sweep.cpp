#include "nbspec/sweep.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>

#include "nbspec/error.hpp"

namespace nbspec {

namespace {

using Rows = std::array<std::uint32_t, kMaxSweepVertices>;

std::size_t pair_bit(std::size_t i, std::size_t j) { return j * (j - 1) / 2 + i; }

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

Rows rows_from_mask(std::size_t n, std::uint64_t mask) {
  Rows rows{};
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (mask >> pair_bit(i, j) & 1U) {
        rows[i] |= 1U << j;
        rows[j] |= 1U << i;
      }
    }
  }
  return rows;
}

bool mask_connected(std::size_t n, const Rows& rows) {
  if (n <= 1) return true;
  std::uint32_t seen = 1;
  std::uint32_t frontier = 1;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (frontier >> v & 1U) next |= rows[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1U << n) - 1;
}

// Colour refinement: start from degrees, split by the multiset of neighbour
// colours until stable. Colour ids are ranks of the signatures, so the
// ordering of classes is itself invariant.
std::vector<std::size_t> refine_colors(std::size_t n, const Rows& rows) {
  std::vector<std::size_t> color(n);
  for (std::size_t v = 0; v < n; ++v) color[v] = static_cast<std::size_t>(__builtin_popcount(rows[v]));
  std::size_t classes = 0;
  while (true) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].push_back(color[v]);
      std::vector<std::size_t> around;
      for (std::size_t w = 0; w < n; ++w) {
        if (rows[v] >> w & 1U) around.push_back(color[w]);
      }
      std::sort(around.begin(), around.end());
      sig[v].insert(sig[v].end(), around.begin(), around.end());
    }
    std::vector<std::vector<std::size_t>> distinct(sig.begin(), sig.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = 0; v < n; ++v) {
      color[v] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    }
    if (distinct.size() == classes) return color;
    classes = distinct.size();
  }
}

std::uint64_t canonical_from_rows(std::size_t n, const Rows& rows) {
  if (n <= 1) return 0;
  const auto color = refine_colors(n, rows);
  const std::size_t classes = *std::max_element(color.begin(), color.end()) + 1;
  std::vector<std::vector<std::size_t>> blocks(classes);
  for (std::size_t v = 0; v < n; ++v) blocks[color[v]].push_back(v);

  std::vector<std::size_t> order;
  order.reserve(n);
  std::uint64_t best = ~std::uint64_t{0};

  auto evaluate = [&] {
    std::uint64_t mask = 0;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (rows[order[i]] >> order[j] & 1U) mask |= std::uint64_t{1} << pair_bit(i, j);
      }
    }
    best = std::min(best, mask);
  };

  auto recurse = [&](auto&& self, std::size_t b) -> void {
    if (b == blocks.size()) {
      evaluate();
      return;
    }
    auto block = blocks[b];
    do {
      order.insert(order.end(), block.begin(), block.end());
      self(self, b + 1);
      order.resize(order.size() - block.size());
    } while (std::next_permutation(block.begin(), block.end()));
  };
  recurse(recurse, 0);
  return best;
}

void check_size(std::size_t n) {
  if (n > kMaxSweepVertices) {
    throw BudgetError("graph sweep limited to " + std::to_string(kMaxSweepVertices) + " vertices, got " +
                      std::to_string(n));
  }
}

}  // namespace

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  check_size(n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (mask >> pair_bit(i, j) & 1U) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

std::uint64_t adjacency_mask(const Graph& g) {
  check_size(g.vertex_count());
  std::uint64_t mask = 0;
  for (const auto& e : g.edges()) mask |= std::uint64_t{1} << pair_bit(e.u, e.v);
  return mask;
}

std::uint64_t canonical_mask(const Graph& g) {
  const auto n = g.vertex_count();
  return canonical_from_rows(n, rows_from_mask(n, adjacency_mask(g)));
}

const std::vector<std::uint64_t>& isomorphism_classes(std::size_t n) {
  check_size(n);
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<std::uint64_t>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // Every graph on n vertices is a graph on n - 1 vertices plus one vertex,
  // so augmenting each smaller class by every neighbourhood reaches all
  // classes.
  std::vector<std::uint64_t> level{0};
  for (std::size_t k = 2; k <= n; ++k) {
    std::set<std::uint64_t> next;
    for (const auto base : level) {
      for (std::uint32_t hood = 0; hood < (1U << (k - 1)); ++hood) {
        std::uint64_t mask = base;
        for (std::size_t i = 0; i + 1 < k; ++i) {
          if (hood >> i & 1U) mask |= std::uint64_t{1} << pair_bit(i, k - 1);
        }
        next.insert(canonical_from_rows(k, rows_from_mask(k, mask)));
      }
    }
    level.assign(next.begin(), next.end());
  }
  if (n == 0) level = {0};
  return cache.emplace(n, std::move(level)).first->second;
}

std::size_t for_each_graph(const SweepOptions& options, const std::function<bool(const Graph&)>& visit) {
  const auto n = options.n;
  check_size(n);
  std::size_t visited = 0;
  auto offer = [&](std::uint64_t mask) {
    if (options.connected_only && !mask_connected(n, rows_from_mask(n, mask))) return true;
    ++visited;
    return visit(graph_from_mask(n, mask));
  };
  if (options.up_to_isomorphism) {
    for (const auto mask : isomorphism_classes(n)) {
      if (!offer(mask)) break;
    }
  } else {
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      if (!offer(mask)) break;
    }
  }
  return visited;
}

std::vector<Graph> sweep_graphs(const SweepOptions& options) {
  std::vector<Graph> out;
  for_each_graph(options, [&](const Graph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

}  // namespace nbspec
