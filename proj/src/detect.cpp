#include "nbspec/detect.hpp"

#include <algorithm>
#include <cmath>

#include "nbspec/operators.hpp"

namespace nbspec {

namespace {

// Cluster centroids with multiplicity, so defective eigenvalues do not smear
// the comparison.
std::vector<Complex> centroid_values(const Spectrum& s) {
  std::vector<Complex> out;
  out.reserve(s.size());
  for (const auto& c : s.clusters()) out.insert(out.end(), c.multiplicity, c.value);
  return out;
}

bool symmetric_spectrum(const Spectrum& s, double tol) {
  const auto values = centroid_values(s);
  return symmetric_under_negation(values, tol);
}

}  // namespace

std::size_t detect_components(const Matrix& K, double tol) {
  return static_cast<std::size_t>(nullspace(Matrix(K - Matrix::Identity(K.rows(), K.cols())), tol).cols());
}

std::size_t detect_degree1_count(const Matrix& K, double tol) {
  return static_cast<std::size_t>(nullspace(K, tol).cols());
}

bool BipartiteDetection::consistent() const {
  const bool v = via_minus_one;
  return via_symmetry_K == v && via_symmetry_B == v && via_extremes_B == v && via_extremes_K == v;
}

bool extremes_symmetric(const Spectrum& s, double tol) {
  if (s.empty()) return true;
  const double rho = s.spectral_radius();
  const double radius = std::max(tol, s.cluster_radius());
  for (const auto& c : s.clusters()) {
    if (std::abs(c.value) < rho - radius) continue;
    if (std::abs(c.value.imag()) > radius || c.value.real() < -radius) continue;
    if (s.count_near(-c.value, radius) > 0) return true;
  }
  return false;
}

BipartiteDetection detect_bipartite(const Graph& g, const Spectrum& spectrum_k, const Spectrum& spectrum_b,
                                    double tol) {
  BipartiteDetection d;
  d.applicable = structure_truth(g).connected;
  if (!d.applicable) return d;
  d.via_minus_one = spectrum_k.count_near(Complex(-1.0, 0.0), std::max(tol, spectrum_k.cluster_radius())) > 0;
  d.via_symmetry_K = symmetric_spectrum(spectrum_k, tol);
  d.via_symmetry_B = symmetric_spectrum(spectrum_b, tol);
  d.via_extremes_B = extremes_symmetric(spectrum_b, tol);
  d.via_extremes_K = extremes_symmetric(spectrum_k, tol);
  return d;
}

DetectionResult detect_structure(const Graph& g, double tol) {
  const NBOperators ops = build_operators(g);
  return detect_structure(g, ops.K, eigenvalues(ops.K), eigenvalues(ops.B), tol);
}

DetectionResult detect_structure(const Graph& g, const Matrix& K, const Spectrum& spectrum_k,
                                 const Spectrum& spectrum_b, double tol) {
  DetectionResult r;
  r.truth = structure_truth(g);
  r.components = detect_components(K);
  r.degree1_count = detect_degree1_count(K);
  r.bipartite = detect_bipartite(g, spectrum_k, spectrum_b, tol);
  r.components_agree = r.components == r.truth.components;
  r.degree1_agree = r.degree1_count == r.truth.degree1_count;
  r.bipartite_agree = !r.bipartite.applicable ||
                      (r.bipartite.consistent() && r.bipartite.verdict() == r.truth.bipartite);
  return r;
}

std::vector<VerificationReport> detection_reports(const DetectionResult& d) {
  std::vector<VerificationReport> out;

  VerificationReport comp;
  comp.check = "detect_components";
  comp.status = d.components_agree ? Status::kPass : Status::kFail;
  comp.residual = std::abs(static_cast<double>(d.components) - static_cast<double>(d.truth.components));
  comp.metadata["detected"] = d.components;
  comp.metadata["truth"] = d.truth.components;
  comp.metadata["rank_tolerance"] = tolerance::kRank;
  out.push_back(std::move(comp));

  VerificationReport leaves;
  leaves.check = "detect_degree1_count";
  leaves.status = d.degree1_agree ? Status::kPass : Status::kFail;
  leaves.residual = std::abs(static_cast<double>(d.degree1_count) - static_cast<double>(d.truth.degree1_count));
  leaves.metadata["detected"] = d.degree1_count;
  leaves.metadata["truth"] = d.truth.degree1_count;
  leaves.metadata["rank_tolerance"] = tolerance::kRank;
  out.push_back(std::move(leaves));

  if (!d.bipartite.applicable) {
    out.push_back(VerificationReport::not_applicable("detect_bipartite", "graph is disconnected"));
    return out;
  }
  VerificationReport bip;
  bip.check = "detect_bipartite";
  bip.hypotheses["connected"] = true;
  bip.status = d.bipartite_agree ? Status::kPass : Status::kFail;
  bip.residual = d.bipartite_agree ? 0.0 : 1.0;
  bip.metadata["truth"] = d.truth.bipartite;
  bip.metadata["minus_one_in_sigma_K"] = d.bipartite.via_minus_one;
  bip.metadata["sigma_K_symmetric"] = d.bipartite.via_symmetry_K;
  bip.metadata["sigma_B_symmetric"] = d.bipartite.via_symmetry_B;
  bip.metadata["extremes_B"] = d.bipartite.via_extremes_B;
  bip.metadata["extremes_K"] = d.bipartite.via_extremes_K;
  out.push_back(std::move(bip));
  return out;
}

VerificationReport verify_K_eigvec_form(const Matrix& K, double tol) {
  const auto n2 = K.rows();
  const auto n = n2 / 2;
  VerificationReport r;
  r.check = "K_eigenvector_form";
  r.metadata["tolerance"] = tol;
  if (n2 == 0) {
    r.status = Status::kPass;
    return r;
  }
  const Spectrum s = eigenvalues(K);
  const CMatrix Kc = K.cast<Complex>();
  const double sigma_max = norm2(K);
  double worst = 0.0;
  std::size_t vectors = 0;
  nlohmann::json defective = nlohmann::json::array();
  for (const auto& c : s.clusters()) {
    const CMatrix shifted = Kc - c.value * CMatrix::Identity(n2, n2);
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tolerance::kRank * std::max(1.0, sigma_max) * static_cast<double>(n2);
    Eigen::Index geometric = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) <= cutoff) ++geometric;
    }
    geometric = std::max<Eigen::Index>(geometric, 1);
    if (static_cast<std::size_t>(geometric) < c.multiplicity) {
      defective.push_back({{"re", stable_number(c.value.real())},
                           {"im", stable_number(c.value.imag())},
                           {"algebraic", c.multiplicity},
                           {"geometric", geometric}});
    }
    for (Eigen::Index k = 0; k < geometric; ++k) {
      const CVector x = svd.matrixV().col(n2 - 1 - k);
      const double form = (x.head(n) + c.value * x.tail(n)).norm() / x.norm();
      worst = std::max(worst, form);
      ++vectors;
    }
  }
  r.residual = worst;
  r.status = worst <= tol ? Status::kPass : Status::kFail;
  r.metadata["eigenvectors_checked"] = vectors;
  r.metadata["defective"] = defective;
  return r;
}

}  // namespace nbspec
