#include "nbspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nbspec/scc.hpp"

namespace nbspec {

namespace {

bool descending(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw PreconditionError(std::string(who) + ": matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", not square");
  }
}

// Parlett-Reinsch diagonal similarity with power-of-two factors (exact in
// floating point).
void balance(Matrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = a.col(i).cwiseAbs().sum() - std::abs(a(i, i));
      double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

struct Deflated {
  Matrix restricted;
  std::size_t zeros = 0;
};

// Iterates Q <- orth(M Q) until the rank stops dropping. The limit spans
// range(M^k) for k at least the index of the zero eigenvalue, an invariant
// subspace carrying every nonzero eigenvalue; the dropped dimension is the
// algebraic multiplicity of zero.
Deflated deflate_zero_eigenvalues(const Matrix& m) {
  const Eigen::Index n = m.rows();
  Matrix q = Matrix::Identity(n, n);
  const double scale = norm2(m);
  const double cutoff = tolerance::kRank * scale * static_cast<double>(n);
  if (scale == 0.0) return {Matrix(0, 0), static_cast<std::size_t>(n)};
  while (q.cols() > 0) {
    Matrix w = m * q;
    Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cutoff) ++r;
    if (r == q.cols()) break;
    q = svd.matrixU().leftCols(r);
  }
  return {q.transpose() * m * q, static_cast<std::size_t>(n - q.cols())};
}

std::vector<Complex> qr_eigenvalues(Matrix a, const EigenOptions& options) {
  const Eigen::Index n = a.rows();
  if (n == 0) return {};
  if (n == 1) return {Complex(a(0, 0), 0.0)};
  if (options.balance) balance(a);

  auto attempt = [&](const Matrix& x, std::vector<Complex>& out) {
    Eigen::EigenSolver<Matrix> solver;
    solver.setMaxIterations(static_cast<Eigen::Index>(options.iterations_per_dim));
    solver.compute(x, false);
    if (solver.info() != Eigen::Success) return false;
    const auto& ev = solver.eigenvalues();
    out.assign(ev.data(), ev.data() + ev.size());
    return true;
  };

  std::vector<Complex> out;
  if (attempt(a, out)) return out;

  // Restart from a random orthogonal similarity; a different starting
  // Hessenberg form usually breaks the stagnation.
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(n));
  std::normal_distribution<double> normal;
  for (int restart = 0; restart < 3; ++restart) {
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
    Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    if (attempt(q.transpose() * a * q, out)) return out;
  }
  throw ConvergenceError("shifted QR did not converge on a " + std::to_string(n) + "x" +
                             std::to_string(n) + " block",
                         {});
}

}  // namespace

// ---- Spectrum --------------------------------------------------------------

Spectrum::Spectrum(std::vector<Complex> values, double cluster_tol)
    : values_(std::move(values)), cluster_tol_(cluster_tol) {}

double Spectrum::spectral_radius() const {
  double rho = 0.0;
  for (const auto& z : values_) rho = std::max(rho, std::abs(z));
  return rho;
}

double Spectrum::cluster_radius() const { return cluster_tol_ * std::max(1.0, spectral_radius()); }

std::vector<Spectrum::Cluster> Spectrum::clusters() const {
  const std::size_t n = values_.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double radius = cluster_radius();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values_[i] - values_[j]) <= radius) parent[find(i)] = find(j);

  std::vector<Cluster> out;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.size();
      out.push_back({Complex(0.0, 0.0), 0});
    }
    Cluster& c = out[slot[root]];
    c.value += values_[i];
    ++c.multiplicity;
  }
  for (auto& c : out) c.value /= static_cast<double>(c.multiplicity);
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return descending(a.value, b.value); });
  return out;
}

double Spectrum::min_modulus() const {
  if (values_.empty()) return 0.0;
  double best = INFINITY;
  for (const auto& c : clusters()) best = std::min(best, std::abs(c.value));
  return best;
}

std::size_t Spectrum::count_near(Complex z, double radius) const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [&](const Complex& w) { return std::abs(w - z) <= radius; }));
}

// ---- dense kernels ---------------------------------------------------------

double determinant(const Matrix& m) {
  require_square(m, "determinant");
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Spectrum eigenvalues(const Matrix& m, double cluster_tol, const EigenOptions& options) {
  require_square(m, "eigenvalues");
  const Eigen::Index n = m.rows();
  if (static_cast<std::size_t>(n) > options.max_dim) {
    throw PreconditionError("eigenvalues: dimension " + std::to_string(n) + " exceeds cap " +
                            std::to_string(options.max_dim));
  }

  std::vector<std::vector<std::size_t>> blocks;
  if (options.isolate_by_permutation) {
    std::vector<std::vector<std::size_t>> succ(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j && m(i, j) != 0.0) succ[static_cast<std::size_t>(i)].push_back(static_cast<std::size_t>(j));
    auto scc = strongly_connected_components(succ);
    blocks.resize(scc.count);
    for (std::size_t i = 0; i < scc.component.size(); ++i) blocks[scc.component[i]].push_back(i);
  } else if (n > 0) {
    blocks.emplace_back(static_cast<std::size_t>(n));
    std::iota(blocks[0].begin(), blocks[0].end(), 0);
  }

  // Under a topological order of the components the matrix is block
  // triangular, so its spectrum is the union of the diagonal blocks'.
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(n));
  for (const auto& idx : blocks) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix block(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) block(i, j) = m(static_cast<Eigen::Index>(idx[i]), static_cast<Eigen::Index>(idx[j]));
    if (k == 1) {
      values.emplace_back(block(0, 0), 0.0);
      continue;
    }
    if (options.deflate_zero) {
      Deflated d = deflate_zero_eigenvalues(block);
      values.insert(values.end(), d.zeros, Complex(0.0, 0.0));
      block = std::move(d.restricted);
    }
    try {
      auto part = qr_eigenvalues(std::move(block), options);
      values.insert(values.end(), part.begin(), part.end());
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(e.what(), values);
    }
  }
  std::sort(values.begin(), values.end(), descending);
  return Spectrum(std::move(values), cluster_tol);
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  require_square(m, "symmetric_eigenvalues");
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace {

template <class Mat>
std::pair<Eigen::Index, Mat> null_basis(const Mat& m, double tol) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return {0, Mat(0, 0)};
  if (m.rows() == 0) return {0, Mat::Identity(cols, cols)};
  // Pad to a square system so the full V is available for every shape.
  Mat work = m;
  if (m.rows() < cols) {
    work = Mat::Zero(cols, cols);
    work.topRows(m.rows()) = m;
  }
  Eigen::JacobiSVD<Mat> svd(work, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * (sv.size() > 0 ? sv(0) : 0.0) *
                        static_cast<double>(std::max(m.rows(), m.cols()));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return {rank, svd.matrixV().rightCols(cols - rank)};
}

}  // namespace

std::size_t numerical_rank(const Matrix& m, double tol) {
  return static_cast<std::size_t>(null_basis(m, tol).first);
}

Matrix nullspace(const Matrix& m, double tol) { return null_basis(m, tol).second; }

CMatrix nullspace(const CMatrix& m, double tol) { return null_basis(m, tol).second; }

CVector eigenvector_for(const Matrix& m, Complex lambda, double tol) {
  require_square(m, "eigenvector_for");
  const Eigen::Index n = m.rows();
  if (n == 0) throw PreconditionError("eigenvector_for: empty matrix");
  CMatrix shifted = m.cast<Complex>();
  shifted.diagonal().array() -= lambda;
  Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
  CVector v = svd.matrixV().col(n - 1);
  const double scale = std::max(1.0, m.norm());
  const double residual = (m.cast<Complex>() * v - lambda * v).norm();
  if (residual > 10.0 * tol * scale) {
    throw PreconditionError("eigenvector_for: (" + std::to_string(lambda.real()) + "," +
                            std::to_string(lambda.imag()) + ") is not an eigenvalue within tolerance (residual " +
                            std::to_string(residual) + ")");
  }
  return v / v.norm();
}

PerronResult power_iteration_perron(const Matrix& m, std::size_t max_iterations, double tol) {
  require_square(m, "power_iteration_perron");
  if ((m.array() < 0.0).any()) throw PreconditionError("power_iteration_perron: matrix has negative entries");
  const Eigen::Index n = m.rows();
  PerronResult out;
  if (n == 0 || m.isZero(0.0)) {
    out.degenerate = true;
    out.vector = Vector::Zero(n);
    if (n > 0) out.vector(0) = 1.0;
    return out;
  }

  Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    Vector w = m * v;
    const double lambda = w.norm();
    out.iterations = it;
    if (lambda == 0.0) break;
    if ((w - lambda * v).norm() <= tol * std::max(1.0, lambda)) {
      out.rho = lambda;
      out.vector = w / lambda;
      out.converged = true;
      return out;
    }
    v = w / lambda;
  }

  out.used_fallback = true;
  Spectrum s = eigenvalues(m);
  out.rho = s.spectral_radius();
  if (out.rho <= s.cluster_radius()) {
    out.rho = 0.0;
    out.degenerate = true;
    out.vector = Vector::Zero(n);
    out.vector(0) = 1.0;
    return out;
  }
  CVector z = eigenvector_for(m, Complex(out.rho, 0.0), 1e-6);
  // Rotate the phase so the largest entry is real positive.
  Eigen::Index arg = 0;
  z.cwiseAbs().maxCoeff(&arg);
  z *= std::conj(z(arg)) / std::abs(z(arg));
  out.vector = z.real();
  out.vector /= out.vector.norm();
  return out;
}

MatchResult match_multisets(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  struct Candidate {
    double distance;
    std::size_t i, j;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      double d = std::abs(a[i] - b[j]);
      if (d <= tol) candidates.push_back({d, i, j});
    }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });

  MatchResult out;
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  for (const auto& c : candidates) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    out.pairs.emplace_back(c.i, c.j);
    out.max_distance = std::max(out.max_distance, c.distance);
  }
  out.unmatched = (a.size() - out.pairs.size()) + (b.size() - out.pairs.size());
  out.matched = out.unmatched == 0;
  return out;
}

bool symmetric_under_negation(std::span<const Complex> values, double tol) {
  std::vector<Complex> negated(values.begin(), values.end());
  for (auto& z : negated) z = -z;
  return match_multisets(values, negated, tol).matched;
}

IntMatrix integer_power(const IntMatrix& m, unsigned k) {
  if (m.rows() != m.cols()) throw PreconditionError("integer_power: matrix is not square");
  IntMatrix result = IntMatrix::Identity(m.rows(), m.cols());
  IntMatrix base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace nbspec
