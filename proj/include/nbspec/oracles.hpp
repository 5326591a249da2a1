#pragma once

#include <cstddef>
#include <span>

#include "nbspec/graph.hpp"
#include "nbspec/linalg.hpp"
#include "nbspec/report.hpp"

namespace nbspec {

inline constexpr unsigned kMaxWalkLength = 8;
inline constexpr std::size_t kMaxWalkEdges = 20;

/// counts(e, f): non-backtracking walks from arc e to arc f in exactly k
/// steps, indexed by DirectedEdgeIndex.
struct WalkCountTable {
  unsigned k = 0;
  IntMatrix counts;
};

/// Exhaustive DFS over arc successors. Throws BudgetError past k = 8 or
/// m = 20, PreconditionError for k = 0.
WalkCountTable count_nb_walks_bruteforce(const Graph& g, unsigned k);

/// Integer B^k against the DFS table, exactly.
VerificationReport verify_Bk_equals_walkcounts(const Graph& g, unsigned k);

/// Edge matrix on the n - 1 arcs of a tree oriented toward vertex 0:
/// entry (e, f) = 1 when head(e) = tail(f).
Matrix rooted_tree_edge_matrix(const Graph& tree);

/// det(lambda I - M) against lambda^dim at each sample, relative to
/// max(1, |lambda^dim|). M must be square with dim <= 20.
VerificationReport charpoly_spotcheck(const Matrix& m, std::span<const double> samples, double tol = 1e-9);

/// Whether connected, non-cycle, d_min >= 2 graphs have a strongly
/// connected arc graph (and report what happened otherwise).
VerificationReport irreducibility_check(const Graph& g);

}  // namespace nbspec
