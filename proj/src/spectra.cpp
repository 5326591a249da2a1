#include "nbspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nbspec {

namespace {

Complex unit_root(std::size_t j, std::size_t n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kTree:
      return "tree";
    case Family::kCycle:
      return "cycle";
    case Family::kDirectedCycle:
      return "directed-cycle";
    case Family::kRegular:
      return "regular";
    case Family::kPinwheel:
      return "pinwheel";
  }
  return "unknown";
}

std::vector<Complex> ClosedFormSpectrum::expanded() const {
  std::vector<Complex> out;
  for (const auto& t : terms) out.insert(out.end(), t.multiplicity, t.value);
  return out;
}

std::size_t ClosedFormSpectrum::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& t : terms) total += t.multiplicity;
  return total;
}

double ClosedFormSpectrum::spectral_radius() const {
  double rho = 0.0;
  for (const auto& t : terms)
    if (t.multiplicity > 0) rho = std::max(rho, std::abs(t.value));
  return rho;
}

ClosedFormSpectrum tree_spectrum(const Graph& g) {
  if (!structure_truth(g).is_tree) throw PreconditionError("tree_spectrum: graph is not a tree");
  const std::size_t n = g.vertex_count();
  ClosedFormSpectrum out{Family::kTree, {}};
  if (n > 1) out.terms.push_back({Complex(0.0, 0.0), 2 * (n - 1)});
  return out;
}

ClosedFormSpectrum cycle_spectrum(std::size_t n) {
  if (n < 3) throw PreconditionError("cycle_spectrum requires n >= 3");
  ClosedFormSpectrum out{Family::kCycle, {}};
  for (std::size_t j = 0; j < n; ++j) out.terms.push_back({unit_root(j, n), 2});
  return out;
}

ClosedFormSpectrum directed_cycle_spectrum(std::size_t n) {
  if (n < 1) throw PreconditionError("directed_cycle_spectrum requires n >= 1");
  ClosedFormSpectrum out{Family::kDirectedCycle, {}};
  for (std::size_t j = 0; j < n; ++j) out.terms.push_back({unit_root(j, n), 1});
  return out;
}

ClosedFormSpectrum regular_spectrum(const Graph& g) {
  const auto truth = structure_truth(g);
  if (!truth.connected) throw PreconditionError("regular_spectrum: graph is not connected");
  if (truth.d_min != truth.d_max) throw PreconditionError("regular_spectrum: graph is not regular");
  const double d = static_cast<double>(truth.d_max);
  const auto n = static_cast<long long>(g.vertex_count());
  const auto m = static_cast<long long>(g.edge_count());

  const Matrix a = build_operators(g).A;
  std::vector<Complex> values;
  for (double lambda : symmetric_eigenvalues(a)) {
    const Complex root = std::sqrt(Complex(lambda * lambda - 4.0 * (d - 1.0), 0.0));
    values.push_back((lambda + root) / 2.0);
    values.push_back((lambda - root) / 2.0);
  }
  ClosedFormSpectrum out{Family::kRegular, {}};
  for (const auto& z : values) out.terms.push_back({z, 1});
  if (m >= n) {
    out.terms.push_back({Complex(1.0, 0.0), static_cast<std::size_t>(m - n)});
    out.terms.push_back({Complex(-1.0, 0.0), static_cast<std::size_t>(m - n)});
  } else {
    // Negative multiplicity: cancel the closest +1 and -1 roots.
    for (long long k = 0; k < n - m; ++k) {
      for (double target : {1.0, -1.0}) {
        auto it = std::min_element(out.terms.begin(), out.terms.end(), [&](const auto& p, const auto& q) {
          const double dp = p.multiplicity ? std::abs(p.value - target) : INFINITY;
          const double dq = q.multiplicity ? std::abs(q.value - target) : INFINITY;
          return dp < dq;
        });
        if (it != out.terms.end() && it->multiplicity > 0) --it->multiplicity;
      }
    }
    std::erase_if(out.terms, [](const auto& t) { return t.multiplicity == 0; });
  }
  return out;
}

ClosedFormSpectrum pinwheel_spectrum(std::size_t p, std::size_t k) {
  if (p < 2) throw PreconditionError("pinwheel_spectrum requires p >= 2 (p = 1 is cycle_spectrum)");
  if (k < 3) throw PreconditionError("pinwheel_spectrum requires k >= 3");
  ClosedFormSpectrum out{Family::kPinwheel, {}};
  for (std::size_t j = 0; j < k; ++j) out.terms.push_back({unit_root(j, k), p});
  for (std::size_t j = 1; j < 2 * k; j += 2) out.terms.push_back({unit_root(j, 2 * k), p - 1});
  const double radius = std::pow(static_cast<double>(2 * p - 1), 1.0 / static_cast<double>(k));
  for (std::size_t j = 0; j < k; ++j) out.terms.push_back({radius * unit_root(j, k), 1});
  return out;
}

Matrix directed_cycle_matrix(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) m(i, (i + 1) % size) = 1.0;
  return m;
}

VerificationReport compare_closed_form(const ClosedFormSpectrum& predicted, const Matrix& m, double tol) {
  const auto computed = eigenvalues(m).values();
  const auto expected = predicted.expanded();
  const auto match = match_multisets(expected, computed, tol);
  VerificationReport r;
  r.check = "closed_form_" + std::string(to_string(predicted.family));
  r.status = match.matched ? Status::kPass : Status::kFail;
  r.residual = match.matched ? match.max_distance : INFINITY;
  r.metadata["tolerance"] = tol;
  r.metadata["predicted"] = expected.size();
  r.metadata["computed"] = computed.size();
  r.metadata["unmatched"] = match.unmatched;
  return r;
}

// ---- pendant cycles --------------------------------------------------------

PendantCycleResult pendant_cycle_eigenpairs(const Graph& base, Vertex v, std::size_t n_cycle, double tol) {
  if (n_cycle < 3) throw PreconditionError("pendant_cycle_eigenpairs requires a cycle of length >= 3");
  PendantCycleResult out{join_at_vertex(base, v, cycle_graph(n_cycle), 0), {}, {}};
  const std::size_t n1 = base.vertex_count();
  auto cycle_vertex = [&](std::size_t t) -> Vertex { t %= n_cycle; return t == 0 ? v : n1 + t - 1; };

  const NBOperators ops = build_operators(out.joined);
  const CMatrix B = ops.B.cast<Complex>();
  const auto arcs = static_cast<Eigen::Index>(ops.index.size());

  double worst = 0.0;
  for (std::size_t j = 0; j < n_cycle; ++j) {
    const Complex omega = unit_root(j, n_cycle);
    CVector x = CVector::Zero(arcs);
    Complex power(1.0, 0.0);
    for (std::size_t t = 0; t < n_cycle; ++t) {
      // forward arc c_t -> c_{t+1} and backward arc c_{-t} -> c_{-t-1}
      const auto fwd = ops.index.find(cycle_vertex(t), cycle_vertex(t + 1));
      const auto bwd = ops.index.find(cycle_vertex(n_cycle - t), cycle_vertex(2 * n_cycle - t - 1));
      if (!fwd || !bwd) throw Error("pendant_cycle_eigenpairs: cycle arc missing from the edge index");
      x(static_cast<Eigen::Index>(*fwd)) = power;
      x(static_cast<Eigen::Index>(*bwd)) = -power;
      power *= omega;
    }
    const double residual = (B * x - omega * x).norm() / x.norm();
    worst = std::max(worst, residual);
    out.pairs.push_back({omega, x / x.norm(), residual});
  }
  out.report = VerificationReport::from_residual("pendant_cycle_eigenpairs", worst, tol);
  out.report.metadata["cycle_length"] = n_cycle;
  out.report.metadata["attach_vertex"] = v;
  return out;
}

// ---- Ihara -----------------------------------------------------------------

VerificationReport ihara_check(const Graph& g, std::span<const double> samples, double tol) {
  const NBOperators ops = build_operators(g);
  const auto n = ops.A.rows();
  const auto arcs = ops.B.rows();
  const long long m_minus_n = static_cast<long long>(g.edge_count()) - static_cast<long long>(g.vertex_count());
  const Matrix I_n = Matrix::Identity(n, n);
  const Matrix I_arcs = Matrix::Identity(arcs, arcs);

  double worst = 0.0;
  nlohmann::json points = nlohmann::json::array();
  for (double u : samples) {
    if (m_minus_n < 0 && std::abs(std::abs(u) - 1.0) < 1e-12) {
      throw PreconditionError("ihara_check: u = ±1 with m < n makes the right-hand side singular");
    }
    const double lhs = determinant(I_arcs - u * ops.B);
    const double rhs = std::pow(1.0 - u * u, static_cast<double>(m_minus_n)) *
                       determinant(u * u * (ops.D - I_n) - u * ops.A + I_n);
    const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
    worst = std::max(worst, rel);
    points.push_back({{"u", u}, {"lhs", lhs}, {"rhs", rhs}, {"relative", rel}});
  }
  auto r = VerificationReport::from_residual("ihara", worst, tol);
  r.metadata["samples"] = points;
  r.metadata["m_minus_n"] = m_minus_n;
  return r;
}

std::pair<Complex, Complex> mu_from_lambda(double lambda, const Vector& x, const Vector& y, const Matrix& D) {
  if (x.size() != y.size() || D.rows() != x.size() || D.cols() != x.size()) {
    throw PreconditionError("mu_from_lambda: dimension mismatch");
  }
  const double xn = x.norm();
  const double yn = y.norm();
  if (xn == 0.0 || yn == 0.0) throw PreconditionError("mu_from_lambda: zero vector");
  const double overlap = x.dot(y) / (xn * yn);
  if (std::abs(overlap) <= 1e-10) {
    throw PreconditionError("mu_from_lambda: x and y are orthogonal; the formula needs x^t y != 0");
  }
  const Vector y_scaled = y / x.dot(y);
  const Matrix dm1 = D - Matrix::Identity(D.rows(), D.cols());
  const double c = x.dot(dm1 * y_scaled);
  const Complex root = std::sqrt(Complex(lambda * lambda - 4.0 * c, 0.0));
  return {(lambda + root) / 2.0, (lambda - root) / 2.0};
}

VerificationReport k_tree_spectrum_check(const Graph& tree) {
  const auto truth = structure_truth(tree);
  if (!truth.is_tree) throw PreconditionError("k_tree_spectrum_check: graph is not a tree");
  if (tree.vertex_count() == 1) {
    return VerificationReport::not_applicable("k_tree_spectrum", "single vertex: sigma(K) = {1, -1} has no zero");
  }
  const Spectrum s = eigenvalues(build_operators(tree).K);
  const double radius = s.cluster_radius();
  const bool has_one = s.count_near({1.0, 0.0}, radius) > 0;
  const bool has_minus_one = s.count_near({-1.0, 0.0}, radius) > 0;
  const std::size_t zeros = s.count_near({0.0, 0.0}, radius);
  VerificationReport r;
  r.check = "k_tree_spectrum";
  r.status = has_one && has_minus_one && zeros > 0 && zeros >= truth.degree1_count ? Status::kPass : Status::kFail;
  r.metadata["has_one"] = has_one;
  r.metadata["has_minus_one"] = has_minus_one;
  r.metadata["zero_multiplicity"] = zeros;
  r.metadata["leaves"] = truth.degree1_count;
  return r;
}

VerificationReport adding_tree_invariance(const Graph& g, const Graph& tree, Vertex v, Vertex w, double tol) {
  if (!structure_truth(tree).is_tree) throw PreconditionError("adding_tree_invariance: second graph is not a tree");
  const Graph joined = join_at_vertex(g, v, tree, w);
  std::vector<Complex> expected = eigenvalues(build_operators(g).B).values();
  expected.insert(expected.end(), 2 * (tree.vertex_count() - 1), Complex(0.0, 0.0));
  const auto computed = eigenvalues(build_operators(joined).B).values();
  const auto match = match_multisets(expected, computed, tol);
  VerificationReport r;
  r.check = "adding_tree_invariance";
  r.status = match.matched ? Status::kPass : Status::kFail;
  r.residual = match.matched ? match.max_distance : INFINITY;
  r.metadata["tolerance"] = tol;
  r.metadata["added_zeros"] = 2 * (tree.vertex_count() - 1);
  r.metadata["unmatched"] = match.unmatched;
  return r;
}

}  // namespace nbspec
