#pragma once

#include <iosfwd>
#include <span>

#include "nbspec/graph.hpp"
#include "nbspec/linalg.hpp"
#include "nbspec/report.hpp"

namespace nbspec {

/// Every matrix attached to a graph, all over one DirectedEdgeIndex.
///
///   B   (2m x 2m)  non-backtracking: (u,v) -> (v,w), w != u
///   C   (2m x 2m)  edge adjacency:   (u,v) -> (v,w)
///   S   (2m x n)   arc -> its head
///   T   (n x 2m)   vertex -> arcs leaving it
///   tau (2m x 2m)  arc reversal
///   A, D (n x n)   adjacency and degree
///   K   (2n x 2n)  [A, D - I; -I, 0]
struct NBOperators {
  Graph graph;
  DirectedEdgeIndex index;
  Matrix B, C, S, T, tau, A, D, K;
};

NBOperators build_operators(const Graph& g);

/// B with exact integer entries, for walk counting.
IntMatrix nonbacktracking_integer(const Graph& g);

/// Residuals of C = ST, B = ST - tau, D = T tau S, A = TS.
VerificationReport verify_product_identities(const NBOperators& ops, double tol = 1e-12);

/// Residual of B [S T^t] = [S T^t] K.
VerificationReport verify_intertwining(const NBOperators& ops, double tol = 1e-12);

/// det(mu^2 I - mu A + (D - I)) against det(mu I - K) at each sample.
VerificationReport verify_K_charpoly(const NBOperators& ops, std::span<const double> samples, double tol = 1e-8);

/// B X = X diag(K, I_r, -I_r) with X = [S | T^t | R].
struct Decomposition {
  Matrix X;
  Matrix R;
  Matrix block;
  std::size_t r = 0;  // columns taken from each intersection
  /// dim(E_{-1} of tau  ∩  Null(ST)) and dim(E_{+1} of tau  ∩  Null(ST)) on the whole graph.
  std::size_t dim_tau_minus = 0;
  std::size_t dim_tau_plus = 0;
  /// Components with m_c < n_c (trees, isolated vertices); each adds {+1, -1}
  /// to the block's spectrum beyond B's.
  std::size_t tree_components = 0;
  double residual = 0.0;
  VerificationReport report;
};

/// Builds R per connected component from the stacked null spaces of
/// [tau + I; ST] (B-eigenvalue +1) and [tau - I; ST] (B-eigenvalue -1).
Decomposition build_decomposition(const NBOperators& ops, double tol = 1e-9);

/// sigma(B) ⊎ {±1 x tree_components} against sigma(block), as multisets.
VerificationReport verify_decomposition_spectrum(const NBOperators& ops, const Decomposition& dec,
                                                 double tol = tolerance::kMatch);

struct LiftedEigenvector {
  CVector vector;       // S * top + T^t * bottom
  bool annihilated = false;
  double residual = 0.0;  // ||B v - mu v||
  VerificationReport report;
};

/// Maps an eigenpair (mu, x) of K to the B-eigenvector X [x; 0; 0].
LiftedEigenvector lift_K_eigenvector(const NBOperators& ops, Complex mu, const CVector& x_k, double tol = 1e-10);

/// [0, -I; (D-I)^{-1}, (D-I)^{-1} A]. Throws PreconditionError when a vertex
/// has degree 1 (K is singular exactly then).
Matrix build_K_inverse(const NBOperators& ops, double tol = 1e-12);

/// Dense MatrixMarket "array real general" text.
void write_matrix_market(std::ostream& os, const Matrix& m);

}  // namespace nbspec
