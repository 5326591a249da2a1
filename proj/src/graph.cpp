#include "nbspec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

#include "nbspec/error.hpp"
#include "nbspec/scc.hpp"

namespace nbspec {

namespace {

std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
  // Plain modulo keeps sequences identical across standard libraries.
  return static_cast<std::size_t>(rng() % bound);
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

// ---- Graph -----------------------------------------------------------------

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : adjacency_(n) {
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) {
      throw PreconditionError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                              "} references a vertex outside 0.." + std::to_string(n));
    }
    if (a == b) throw PreconditionError("self-loop at vertex " + std::to_string(a));
    edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

Graph::Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size())) {}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(vertex_count());
  for (Vertex v = 0; v < vertex_count(); ++v) out[v] = adjacency_[v].size();
  return out;
}

std::size_t Graph::min_degree() const {
  std::size_t best = vertex_count() == 0 ? 0 : adjacency_[0].size();
  for (const auto& nbrs : adjacency_) best = std::min(best, nbrs.size());
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
  return best;
}

// ---- DirectedEdgeIndex -----------------------------------------------------

DirectedEdgeIndex::DirectedEdgeIndex(const Graph& g) : offsets_(g.vertex_count() + 1, 0) {
  arcs_.reserve(2 * g.edge_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    offsets_[u] = arcs_.size();
    for (Vertex v : g.neighbors(u)) arcs_.push_back({u, v});
  }
  offsets_[g.vertex_count()] = arcs_.size();
  reverse_.resize(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) reverse_[i] = index_of(arcs_[i].head, arcs_[i].tail);
}

std::optional<std::size_t> DirectedEdgeIndex::find(Vertex tail, Vertex head) const {
  if (tail + 1 >= offsets_.size()) return std::nullopt;
  auto first = arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[tail]);
  auto last = arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[tail + 1]);
  auto it = std::lower_bound(first, last, DirectedEdge{tail, head});
  if (it == last || it->head != head) return std::nullopt;
  return static_cast<std::size_t>(it - arcs_.begin());
}

std::size_t DirectedEdgeIndex::index_of(Vertex tail, Vertex head) const {
  if (auto i = find(tail, head)) return *i;
  throw PreconditionError("(" + std::to_string(tail) + "," + std::to_string(head) + ") is not an edge");
}

// ---- text format -----------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_id(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '-') throw ParseError("negative vertex id '" + std::string(tok) + "'", line);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(tok) + "'", line);
  }
  return value;
}

}  // namespace

Graph from_edge_list(std::string_view text) {
  std::optional<std::size_t> pinned_n;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t max_id_plus_one = 0;
  bool seen_content = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto toks = split_ws(line);
    if (!seen_content && toks.size() == 2 && toks[0] == "n") {
      pinned_n = parse_id(toks[1], line_no);
      seen_content = true;
      continue;
    }
    seen_content = true;
    if (toks.size() != 2) throw ParseError("expected 'u v', got '" + std::string(line) + "'", line_no);
    Vertex u = parse_id(toks[0], line_no);
    Vertex v = parse_id(toks[1], line_no);
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line_no);
    if (pinned_n && (u >= *pinned_n || v >= *pinned_n)) {
      throw ParseError("vertex id exceeds declared count " + std::to_string(*pinned_n), line_no);
    }
    max_id_plus_one = std::max({max_id_plus_one, u + 1, v + 1});
    edges.emplace_back(u, v);
  }
  return Graph(pinned_n.value_or(max_id_plus_one), edges);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

// ---- generators ------------------------------------------------------------

Graph empty_graph(std::size_t n) { return Graph(n, std::vector<std::pair<Vertex, Vertex>>{}); }

Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw PreconditionError("cycle_graph requires n >= 3, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return Graph(a + b, edges);
}

Graph petersen_graph() {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph(10, edges);
}

Graph pinwheel_graph(std::size_t p, std::size_t k) {
  if (p < 1) throw PreconditionError("pinwheel_graph requires p >= 1");
  if (k < 3) throw PreconditionError("pinwheel_graph requires k >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t c = 0; c < p; ++c) {
    Vertex first = 1 + c * (k - 1);
    Vertex prev = 0;
    for (std::size_t t = 0; t + 1 < k; ++t) {
      edges.emplace_back(prev, first + t);
      prev = first + t;
    }
    edges.emplace_back(prev, 0);
  }
  return Graph(p * (k - 1) + 1, edges);
}

Graph join_at_vertex(const Graph& g1, Vertex v1, const Graph& g2, Vertex v2) {
  if (v1 >= g1.vertex_count()) throw PreconditionError("join_at_vertex: v1 out of range");
  if (v2 >= g2.vertex_count()) throw PreconditionError("join_at_vertex: v2 out of range");
  const std::size_t n1 = g1.vertex_count();
  auto relabel = [&](Vertex w) { return w == v2 ? v1 : (w < v2 ? n1 + w : n1 + w - 1); };
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const Edge& e : g1.edges()) edges.emplace_back(e.u, e.v);
  for (const Edge& e : g2.edges()) edges.emplace_back(relabel(e.u), relabel(e.v));
  return Graph(n1 + g2.vertex_count() - 1, edges);
}

Graph disjoint_union(const Graph& g1, const Graph& g2) {
  const std::size_t n1 = g1.vertex_count();
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const Edge& e : g1.edges()) edges.emplace_back(e.u, e.v);
  for (const Edge& e : g2.edges()) edges.emplace_back(n1 + e.u, n1 + e.v);
  return Graph(n1 + g2.vertex_count(), edges);
}

Graph random_tree(std::uint64_t seed, std::size_t n) {
  if (n <= 1) return empty_graph(n);
  if (n == 2) return path_graph(2);
  std::mt19937_64 rng(seed);
  std::vector<Vertex> prufer(n - 2);
  for (auto& x : prufer) x = draw_below(rng, n);

  std::vector<std::size_t> remaining(n, 1);
  for (Vertex x : prufer) ++remaining[x];
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex x : prufer) {
    Vertex leaf = 0;
    while (remaining[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, x);
    --remaining[leaf];
    --remaining[x];
  }
  std::vector<Vertex> last;
  for (Vertex v = 0; v < n; ++v)
    if (remaining[v] == 1) last.push_back(v);
  edges.emplace_back(last[0], last[1]);
  return Graph(n, edges);
}

Graph random_connected_graph(std::uint64_t seed, std::size_t n, double p) {
  Graph tree = random_tree(seed, n);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const Edge& e : tree.edges()) edges.emplace_back(e.u, e.v);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!tree.has_edge(u, v) && draw_unit(rng) < p) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph random_graph(std::uint64_t seed, std::size_t n, double p) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (draw_unit(rng) < p) edges.emplace_back(u, v);
  return Graph(n, edges);
}

// ---- structure -------------------------------------------------------------

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<std::size_t> new_id(g.vertex_count(), SIZE_MAX);
  for (std::size_t i = 0; i < vertices.size(); ++i) new_id.at(vertices[i]) = i;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const Edge& e : g.edges())
    if (new_id[e.u] != SIZE_MAX && new_id[e.v] != SIZE_MAX) edges.emplace_back(new_id[e.u], new_id[e.v]);
  return Graph(vertices.size(), edges);
}

TwoCore two_core(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> deg = g.degrees();
  std::vector<bool> gone(n, false);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v)
    if (deg[v] <= 1) queue.push_back(v);

  TwoCore out;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (gone[v]) continue;
    gone[v] = true;
    out.removed.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (gone[w]) continue;
      if (--deg[w] == 1) queue.push_back(w);
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!gone[v]) out.kept.push_back(v);
  out.core = induced_subgraph(g, out.kept);
  return out;
}

std::vector<std::size_t> component_labels(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> label(n, SIZE_MAX);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != SIZE_MAX) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v))
        if (label[w] == SIZE_MAX) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

StructureTruth structure_truth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  StructureTruth t;
  auto labels = component_labels(g);
  t.components = n == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  t.connected = t.components == 1;
  t.d_min = g.min_degree();
  t.d_max = g.max_degree();
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 1) ++t.degree1_count;

  // 2-colouring by BFS.
  std::vector<int> colour(n, -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n && t.bipartite; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    queue.push_back(s);
    while (!queue.empty() && t.bipartite) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[v];
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          t.bipartite = false;
          break;
        }
      }
    }
  }
  t.is_tree = t.connected && g.edge_count() + 1 == n;
  t.is_cycle = t.connected && n >= 3 && t.d_min == 2 && t.d_max == 2;
  return t;
}

bool directed_edge_graph_strongly_connected(const Graph& g) {
  DirectedEdgeIndex index(g);
  if (index.size() == 0) return false;
  std::vector<std::vector<std::size_t>> succ(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto [u, v] = index[i];
    for (std::size_t j = index.out_begin(v); j < index.out_begin(v + 1); ++j)
      if (index[j].head != u) succ[i].push_back(j);
  }
  return strongly_connected_components(succ).count == 1;
}

// ---- SCC -------------------------------------------------------------------

SccResult strongly_connected_components(const std::vector<std::vector<std::size_t>>& successors) {
  const std::size_t n = successors.size();
  constexpr std::size_t kUnvisited = SIZE_MAX;
  std::vector<std::size_t> order(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  SccResult result;
  result.component.assign(n, kUnvisited);

  struct Frame {
    std::size_t node;
    std::size_t next_child;
  };
  std::vector<Frame> call;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    call.push_back({root, 0});
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = successors[f.node];
      if (f.next_child < out.size()) {
        std::size_t w = out[f.next_child++];
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], order[w]);
        }
        continue;
      }
      std::size_t v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == order[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component[w] = result.count;
        } while (w != v);
        ++result.count;
      }
    }
  }
  return result;
}

}  // namespace nbspec
