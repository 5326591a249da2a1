#include "nbspec/oracles.hpp"

#include <cmath>

#include "nbspec/operators.hpp"

namespace nbspec {

namespace {

void walk(const Graph& g, const DirectedEdgeIndex& index, Vertex tail, Vertex head, unsigned remaining,
          IntMatrix& counts, std::size_t start) {
  if (remaining == 0) {
    counts(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(index.index_of(tail, head))) += 1;
    return;
  }
  for (const Vertex next : g.neighbors(head)) {
    if (next != tail) walk(g, index, head, next, remaining - 1, counts, start);
  }
}

}  // namespace

WalkCountTable count_nb_walks_bruteforce(const Graph& g, unsigned k) {
  if (k == 0) throw PreconditionError("walk length must be at least 1");
  if (k > kMaxWalkLength || g.edge_count() > kMaxWalkEdges) {
    throw BudgetError("brute-force walk count limited to k <= 8 and m <= 20 (k = " + std::to_string(k) +
                      ", m = " + std::to_string(g.edge_count()) + ")");
  }
  const DirectedEdgeIndex index(g);
  const auto arcs = static_cast<Eigen::Index>(index.size());
  WalkCountTable table{k, IntMatrix::Zero(arcs, arcs)};
  for (std::size_t e = 0; e < index.size(); ++e) {
    walk(g, index, index[e].tail, index[e].head, k, table.counts, e);
  }
  return table;
}

VerificationReport verify_Bk_equals_walkcounts(const Graph& g, unsigned k) {
  const WalkCountTable oracle = count_nb_walks_bruteforce(g, k);
  const IntMatrix power = integer_power(nonbacktracking_integer(g), k);
  const IntMatrix diff = (power - oracle.counts).cwiseAbs();
  VerificationReport r;
  r.check = "walk_counts_k" + std::to_string(k);
  r.residual = diff.size() == 0 ? 0.0 : static_cast<double>(diff.maxCoeff());
  r.status = r.residual == 0.0 ? Status::kPass : Status::kFail;
  r.metadata["k"] = k;
  r.metadata["arcs"] = oracle.counts.rows();
  r.metadata["total_walks"] = oracle.counts.sum();
  r.metadata["mismatched_entries"] = (diff.array() != 0).count();
  return r;
}

Matrix rooted_tree_edge_matrix(const Graph& tree) {
  const auto truth = structure_truth(tree);
  if (!truth.is_tree) throw PreconditionError("rooted_tree_edge_matrix needs a tree");
  const auto n = tree.vertex_count();
  // Parent pointers from a BFS rooted at 0.
  std::vector<Vertex> parent(n, n);
  std::vector<Vertex> queue{0};
  parent[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Vertex w : tree.neighbors(queue[head])) {
      if (parent[w] == n) {
        parent[w] = queue[head];
        queue.push_back(w);
      }
    }
  }
  // Arc i is (i + 1) -> parent(i + 1).
  const auto arcs = static_cast<Eigen::Index>(n == 0 ? 0 : n - 1);
  Matrix c = Matrix::Zero(arcs, arcs);
  for (Eigen::Index e = 0; e < arcs; ++e) {
    const Vertex head = parent[static_cast<std::size_t>(e) + 1];
    if (head != 0) c(e, static_cast<Eigen::Index>(head) - 1) = 1.0;
  }
  return c;
}

VerificationReport charpoly_spotcheck(const Matrix& m, std::span<const double> samples, double tol) {
  if (m.rows() != m.cols()) throw PreconditionError("charpoly_spotcheck needs a square matrix");
  if (m.rows() > 20) throw PreconditionError("charpoly_spotcheck limited to dimension 20");
  const auto dim = m.rows();
  VerificationReport r;
  r.check = "charpoly_monomial";
  r.metadata["dimension"] = dim;
  r.metadata["tolerance"] = tol;
  double worst = 0.0;
  nlohmann::json points = nlohmann::json::array();
  for (const double lambda : samples) {
    const double lhs = determinant(lambda * Matrix::Identity(dim, dim) - m);
    const double rhs = std::pow(lambda, static_cast<double>(dim));
    const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    worst = std::max(worst, rel);
    points.push_back({{"lambda", lambda}, {"det", stable_number(lhs)}, {"predicted", stable_number(rhs)}});
  }
  r.metadata["samples"] = points;
  r.residual = worst;
  r.status = worst <= tol ? Status::kPass : Status::kFail;
  return r;
}

VerificationReport irreducibility_check(const Graph& g) {
  const auto t = structure_truth(g);
  const bool hypothesis = t.connected && !t.is_cycle && t.d_min >= 2;
  const bool strongly = directed_edge_graph_strongly_connected(g);
  VerificationReport r;
  r.check = "irreducibility";
  r.hypotheses["connected_not_cycle_dmin2"] = hypothesis;
  r.metadata["strongly_connected"] = strongly;
  if (!hypothesis) {
    r.status = Status::kNotApplicable;
    return r;
  }
  r.status = strongly ? Status::kPass : Status::kFail;
  r.residual = strongly ? 0.0 : 1.0;
  return r;
}

}  // namespace nbspec
