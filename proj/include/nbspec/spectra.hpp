#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nbspec/graph.hpp"
#include "nbspec/linalg.hpp"
#include "nbspec/operators.hpp"
#include "nbspec/report.hpp"

namespace nbspec {

// ---- closed forms ----------------------------------------------------------

enum class Family { kTree, kCycle, kDirectedCycle, kRegular, kPinwheel };

std::string_view to_string(Family f);

/// Predicted eigenvalues with multiplicities.
struct ClosedFormSpectrum {
  Family family = Family::kTree;
  std::vector<Spectrum::Cluster> terms;

  std::vector<Complex> expanded() const;
  std::size_t total_multiplicity() const;
  double spectral_radius() const;
};

/// {0 x 2(n-1)} for a tree on n vertices.
ClosedFormSpectrum tree_spectrum(const Graph& g);
/// {e^{2 pi i j / n} x 2 : j = 0..n-1}.
ClosedFormSpectrum cycle_spectrum(std::size_t n);
/// The n-th roots of unity, each once.
ClosedFormSpectrum directed_cycle_spectrum(std::size_t n);
/// Both roots of mu^2 - lambda mu + (d - 1) per lambda in sigma(A), plus +1
/// and -1 each (m - n) times. For d = 1 (m - n = -1) one +1 and one -1 are
/// removed instead.
ClosedFormSpectrum regular_spectrum(const Graph& g);
/// Pinwheel of p >= 2 cycles of length k.
ClosedFormSpectrum pinwheel_spectrum(std::size_t p, std::size_t k);

/// Adjacency matrix of the directed n-cycle 0 -> 1 -> ... -> n-1 -> 0.
Matrix directed_cycle_matrix(std::size_t n);

/// Matches a closed form against the QR spectrum of `m` per eigenvalue.
VerificationReport compare_closed_form(const ClosedFormSpectrum& predicted, const Matrix& m,
                                       double tol = tolerance::kMatch);

// ---- explicit eigenvectors -------------------------------------------------

struct EigenPair {
  Complex value;
  CVector vector;
  double residual = 0.0;  // ||B x - value x||
};

struct PendantCycleResult {
  Graph joined;
  std::vector<EigenPair> pairs;  // j = 0..n_cycle-1
  VerificationReport report;
};

/// Joins `base` with C_{n_cycle} at `v` and builds, for each j, the vector
/// supported on the two directed copies of the cycle with entries
/// +e^{2 pi i j t/n} and -e^{2 pi i j t/n}.
PendantCycleResult pendant_cycle_eigenpairs(const Graph& base, Vertex v, std::size_t n_cycle, double tol = 1e-9);

// ---- Ihara and K -----------------------------------------------------------

inline constexpr double kDefaultIharaSamples[] = {0.1, 0.3, 0.5, 0.7, -0.4};

/// det(I - uB) against (1 - u^2)^{m-n} det(u^2 (D - I) - uA + I).
VerificationReport ihara_check(const Graph& g, std::span<const double> samples = kDefaultIharaSamples,
                               double tol = 1e-8);

/// Both roots of mu^2 - lambda mu + x^t (D - I) y = 0 after scaling y so that
/// x^t y = 1. Returns (plus root, minus root).
std::pair<Complex, Complex> mu_from_lambda(double lambda, const Vector& x, const Vector& y, const Matrix& D);

/// 1, -1 and 0 in sigma(K) and mult(0) >= number of leaves.
VerificationReport k_tree_spectrum_check(const Graph& tree);

/// sigma(B of join(g, t)) = sigma(B of g) ⊎ {0 x 2(n_t - 1)}.
VerificationReport adding_tree_invariance(const Graph& g, const Graph& tree, Vertex v, Vertex w,
                                          double tol = tolerance::kMatch);

// ---- bounds ----------------------------------------------------------------

enum class BoundKind { kUpper, kLower, kStrictLower };

struct BoundReport {
  std::string name;
  BoundKind kind = BoundKind::kUpper;
  bool hypothesis = false;
  double bound = 0.0;
  double observed = 0.0;
  /// bound - observed for upper bounds, observed - bound for lower ones.
  double margin = 0.0;
  /// Extra clauses beyond the inequality (e.g. equality iff regular).
  bool side_conditions = true;
  nlohmann::json detail = nlohmann::json::object();

  /// Respects the bound within `slack` (strict bounds need margin > slack).
  bool holds(double slack = 1e-8) const;
  VerificationReport to_report(double slack = 1e-8) const;
};

/// min |mu| over sigma(B) >= 1 for connected graphs with d_min >= 2.
BoundReport check_lower_bound_modulus(const Graph& g, const Spectrum& spectrum_b);
/// rho(K) > 1 for connected graphs with d_min >= 2 that are not cycles.
BoundReport check_rho_K_gt_1(const Graph& g, const Spectrum& spectrum_k);

/// Perron data used by the upper bound: x = Perron vector of A, y = bottom
/// half of K's dominant eigenvector, scaled so x^t y = 1.
struct PerronPair {
  double rho_a = 0.0;
  double rho_k = 0.0;
  Vector x;
  Vector y;
  double xt_dm1_y = 0.0;  // x^t (D - I) y
  bool dominant_real_simple = false;
};

/// Requires a connected graph with at least one edge.
PerronPair perron_pair(const NBOperators& ops);

/// Extracts K's dominant eigenpair and checks that y is entrywise positive.
VerificationReport check_perron_positivity(const Graph& g);

/// Gershgorin-style bound (with the equality-iff-regular clause), the
/// rho(A)-based upper bound, and the edge-count corollary bound.
std::vector<BoundReport> spectral_radius_bounds(const Graph& g);
std::vector<BoundReport> spectral_radius_bounds(const Graph& g, const Spectrum& spectrum_b);

}  // namespace nbspec
