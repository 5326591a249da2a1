#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nbspec/error.hpp"

namespace nbspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

namespace tolerance {
/// Per-pair distance when matching two spectra as multisets.
inline constexpr double kMatch = 1e-6;
/// Eigenvalues within kCluster * max(1, rho) are reported as one value.
inline constexpr double kCluster = 1e-6;
/// Singular values <= kRank * sigma_max * max(rows, cols) count as zero.
inline constexpr double kRank = 1e-10;
}  // namespace tolerance

/// Thrown when shifted QR does not converge; carries whatever eigenvalues were
/// obtained from blocks that did converge.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<Complex> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<Complex>& partial() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// Multiset of eigenvalues, algebraic multiplicity expanded.
class Spectrum {
 public:
  struct Cluster {
    Complex value;  // centroid
    std::size_t multiplicity = 0;
  };

  Spectrum() = default;
  Spectrum(std::vector<Complex> values, double cluster_tol);

  const std::vector<Complex>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double cluster_tol() const noexcept { return cluster_tol_; }

  /// Max modulus; 0 for an empty spectrum.
  double spectral_radius() const;
  /// Min modulus over cluster centroids; 0 for an empty spectrum.
  double min_modulus() const;
  /// Absolute radius used for clustering: cluster_tol * max(1, rho).
  double cluster_radius() const;

  /// Single-linkage groups within cluster_radius(); centroids sorted by
  /// descending real part, then descending imaginary part.
  std::vector<Cluster> clusters() const;
  /// Number of eigenvalues within `radius` of z.
  std::size_t count_near(Complex z, double radius) const;
  /// count_near with the clustering radius.
  std::size_t multiplicity_of(Complex z) const { return count_near(z, cluster_radius()); }

 private:
  std::vector<Complex> values_;
  double cluster_tol_ = tolerance::kCluster;
};

struct EigenOptions {
  std::size_t max_dim = 400;
  std::size_t iterations_per_dim = 100;
  /// Split by strongly connected components of the sparsity pattern first.
  bool isolate_by_permutation = true;
  /// Remove the exact zero eigenvalues by iterating onto range(M^k) before QR.
  bool deflate_zero = true;
  bool balance = true;
};

double determinant(const Matrix& m);

/// Full complex spectrum of a real square matrix.
Spectrum eigenvalues(const Matrix& m, double cluster_tol = tolerance::kCluster,
                     const EigenOptions& options = {});

/// Eigenvalues of a real symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// Largest singular value.
double norm2(const Matrix& m);

std::size_t numerical_rank(const Matrix& m, double tol = tolerance::kRank);
/// Orthonormal basis (as columns) of the numerical null space.
Matrix nullspace(const Matrix& m, double tol = tolerance::kRank);
CMatrix nullspace(const CMatrix& m, double tol = tolerance::kRank);

/// Unit vector v with ||Mv - lambda v|| <= 10 tol max(1, ||M||). Throws
/// PreconditionError when lambda is not an eigenvalue within tol.
CVector eigenvector_for(const Matrix& m, Complex lambda, double tol = 1e-8);

struct PerronResult {
  double rho = 0.0;
  Vector vector;            // unit 2-norm, nonnegative up to rounding
  bool converged = false;   // power iteration converged on its own
  bool used_fallback = false;
  bool degenerate = false;  // zero (or nilpotent) matrix
  std::size_t iterations = 0;
};

/// Dominant eigenpair of a nonnegative square matrix. Falls back to the QR
/// spectrum when the iteration does not settle (periodic or reducible input).
PerronResult power_iteration_perron(const Matrix& m, std::size_t max_iterations = 5000,
                                    double tol = 1e-12);

struct MatchResult {
  bool matched = false;
  double max_distance = 0.0;  // over accepted pairs
  std::size_t unmatched = 0;  // elements of either side left without a partner
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Greedy minimum-distance matching of two multisets: pairs are taken in
/// order of increasing distance, each element used at most once, and only
/// pairs within `tol` are accepted.
MatchResult match_multisets(std::span<const Complex> a, std::span<const Complex> b,
                            double tol = tolerance::kMatch);

/// Whether the multiset equals its own negation within `tol`.
bool symmetric_under_negation(std::span<const Complex> values, double tol = tolerance::kMatch);

/// Exact integer power, k >= 0.
IntMatrix integer_power(const IntMatrix& m, unsigned k);

}  // namespace nbspec
