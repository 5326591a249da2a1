#pragma once

#include <cstddef>

#include "nbspec/graph.hpp"
#include "nbspec/linalg.hpp"
#include "nbspec/report.hpp"

namespace nbspec {

/// dim Null(K - I): the number of connected components.
std::size_t detect_components(const Matrix& K, double tol = tolerance::kRank);

/// dim Null(K): the number of degree-1 vertices.
std::size_t detect_degree1_count(const Matrix& K, double tol = tolerance::kRank);

struct BipartiteDetection {
  bool applicable = false;  // false for disconnected input
  bool via_minus_one = false;       // -1 in sigma(K)
  bool via_symmetry_K = false;      // sigma(K) = -sigma(K)
  bool via_symmetry_B = false;      // sigma(B) = -sigma(B)
  bool via_extremes_B = false;      // a real dominant mu_1 >= 0 with -mu_1 present
  bool via_extremes_K = false;

  /// All five variants return the same answer.
  bool consistent() const;
  /// Meaningful only when consistent().
  bool verdict() const { return via_minus_one; }
};

/// Reads bipartiteness off the two spectra in five ways.
BipartiteDetection detect_bipartite(const Graph& g, const Spectrum& spectrum_k, const Spectrum& spectrum_b,
                                    double tol = tolerance::kMatch);

/// Maximal-modulus eigenvalue that is real and >= 0, and whose negation is
/// also present. Empty spectra qualify.
bool extremes_symmetric(const Spectrum& s, double tol = tolerance::kMatch);

struct DetectionResult {
  std::size_t components = 0;
  std::size_t degree1_count = 0;
  BipartiteDetection bipartite;

  StructureTruth truth;

  bool components_agree = false;
  bool degree1_agree = false;
  /// True when not applicable.
  bool bipartite_agree = false;

  bool all_agree() const { return components_agree && degree1_agree && bipartite_agree; }
};

DetectionResult detect_structure(const Graph& g, double tol = tolerance::kMatch);
/// Same, reusing precomputed spectra of K and B.
DetectionResult detect_structure(const Graph& g, const Matrix& K, const Spectrum& spectrum_k,
                                 const Spectrum& spectrum_b, double tol = tolerance::kMatch);

/// One report per detector.
std::vector<VerificationReport> detection_reports(const DetectionResult& d);

/// For each eigenpair (mu, [a; b]) of K: ||a + mu b|| <= tol ||[a; b]||.
/// Eigenvalues whose eigenspace is smaller than their algebraic
/// multiplicity are listed under metadata "defective".
VerificationReport verify_K_eigvec_form(const Matrix& K, double tol = 1e-10);

}  // namespace nbspec
