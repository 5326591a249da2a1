#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nbspec {

using Vertex = std::size_t;

/// Undirected edge stored with `u < v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Ordered pair (tail -> head) of adjacent vertices.
struct DirectedEdge {
  Vertex tail = 0;
  Vertex head = 0;

  DirectedEdge reversed() const { return {head, tail}; }
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Simple undirected graph. Immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on `n` vertices. Duplicate edges (in either orientation)
  /// are merged; self-loops and out-of-range ids throw PreconditionError.
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);
  Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted by (u, v) with u < v.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  bool has_edge(Vertex u, Vertex v) const;

  std::vector<std::size_t> degrees() const;
  std::size_t min_degree() const;  // 0 for the empty graph
  std::size_t max_degree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Bijection between the 2m ordered adjacent pairs and 0..2m-1, in
/// lexicographic (tail, head) order.
class DirectedEdgeIndex {
 public:
  explicit DirectedEdgeIndex(const Graph& g);

  std::size_t size() const noexcept { return arcs_.size(); }
  const DirectedEdge& operator[](std::size_t i) const { return arcs_[i]; }
  const std::vector<DirectedEdge>& arcs() const noexcept { return arcs_; }

  /// Index of (tail, head); throws PreconditionError if not an edge.
  std::size_t index_of(Vertex tail, Vertex head) const;
  std::optional<std::size_t> find(Vertex tail, Vertex head) const;
  /// Index of the reversed arc.
  std::size_t reverse_of(std::size_t i) const { return reverse_[i]; }
  /// Arcs leaving `v` occupy [out_begin(v), out_begin(v + 1)).
  std::size_t out_begin(Vertex v) const { return offsets_.at(v); }

 private:
  std::vector<DirectedEdge> arcs_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> reverse_;
};

// ---- text format -----------------------------------------------------------

/// Parses "u v" lines, `#` comments, and an optional leading "n <count>".
Graph from_edge_list(std::string_view text);
/// Inverse of from_edge_list; always writes the "n <count>" header.
std::string to_edge_list(const Graph& g);

// ---- generators ------------------------------------------------------------

Graph empty_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph petersen_graph();
/// p cycles of length k sharing vertex 0.
Graph pinwheel_graph(std::size_t p, std::size_t k);
/// Vertex-disjoint union of g1 and g2 with v1 and v2 identified. Vertices of
/// g1 keep their ids; g2's vertices follow, skipping v2.
Graph join_at_vertex(const Graph& g1, Vertex v1, const Graph& g2, Vertex v2);
Graph disjoint_union(const Graph& g1, const Graph& g2);
/// Uniform labelled tree on n vertices from a random Pruefer sequence.
Graph random_tree(std::uint64_t seed, std::size_t n);
/// Random tree plus each remaining pair independently with probability p.
Graph random_connected_graph(std::uint64_t seed, std::size_t n, double p);
/// G(n, p); may be disconnected.
Graph random_graph(std::uint64_t seed, std::size_t n, double p);

// ---- structure -------------------------------------------------------------

struct TwoCore {
  Graph core;                    // induced on survivors, relabelled in order
  std::vector<Vertex> kept;      // original id of each core vertex
  std::vector<Vertex> removed;   // in deletion order
};

/// Iteratively strips vertices of degree <= 1.
TwoCore two_core(const Graph& g);

struct StructureTruth {
  std::size_t components = 0;
  std::size_t degree1_count = 0;
  bool bipartite = true;
  bool is_tree = false;
  bool is_cycle = false;
  bool connected = false;
  std::size_t d_min = 0;
  std::size_t d_max = 0;
};

StructureTruth structure_truth(const Graph& g);

/// Component label per vertex, labels 0..c-1 in order of first vertex.
std::vector<std::size_t> component_labels(const Graph& g);

/// Whether the non-backtracking successor graph on the 2m arcs is strongly
/// connected. False for m = 0.
bool directed_edge_graph_strongly_connected(const Graph& g);

/// Induced subgraph on `vertices` (kept in the given order).
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

}  // namespace nbspec
