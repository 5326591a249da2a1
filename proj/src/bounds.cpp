#include <algorithm>
#include <cmath>

#include "nbspec/spectra.hpp"

namespace nbspec {

namespace {

bool perron_hypothesis(const StructureTruth& t) {
  return t.connected && !t.is_tree && !t.is_cycle && t.d_min >= 2;
}

}  // namespace

bool BoundReport::holds(double slack) const {
  if (!hypothesis) return true;
  if (!side_conditions || std::isnan(margin)) return false;
  return kind == BoundKind::kStrictLower ? margin > slack : margin >= -slack;
}

VerificationReport BoundReport::to_report(double slack) const {
  VerificationReport r;
  r.check = name;
  r.hypotheses["applicable"] = hypothesis;
  r.residual = std::isnan(margin) ? INFINITY : std::max(0.0, -margin);
  r.status = !hypothesis ? Status::kNotApplicable : (holds(slack) ? Status::kPass : Status::kFail);
  r.metadata = detail;
  r.metadata["bound"] = std::isnan(bound) ? nlohmann::json("undefined") : nlohmann::json(bound);
  r.metadata["observed"] = observed;
  r.metadata["margin"] = std::isnan(margin) ? nlohmann::json("undefined") : nlohmann::json(margin);
  r.metadata["slack"] = slack;
  return r;
}

BoundReport check_lower_bound_modulus(const Graph& g, const Spectrum& spectrum_b) {
  const auto t = structure_truth(g);
  BoundReport r;
  r.name = "min_modulus_at_least_one";
  r.kind = BoundKind::kLower;
  r.hypothesis = t.connected && t.d_min >= 2;
  r.bound = 1.0;
  r.observed = spectrum_b.min_modulus();
  r.margin = r.observed - r.bound;
  return r;
}

BoundReport check_rho_K_gt_1(const Graph& g, const Spectrum& spectrum_k) {
  BoundReport r;
  r.name = "rho_K_greater_than_one";
  r.kind = BoundKind::kStrictLower;
  r.hypothesis = perron_hypothesis(structure_truth(g));
  r.bound = 1.0;
  r.observed = spectrum_k.spectral_radius();
  r.margin = r.observed - r.bound;
  return r;
}

PerronPair perron_pair(const NBOperators& ops) {
  const auto n = ops.A.rows();
  if (n == 0 || ops.graph.edge_count() == 0) throw PreconditionError("perron_pair: graph has no edges");
  PerronPair out;

  Eigen::SelfAdjointEigenSolver<Matrix> adj(ops.A);
  out.rho_a = adj.eigenvalues()(n - 1);
  out.x = adj.eigenvectors().col(n - 1);
  if (out.x.sum() < 0.0) out.x = -out.x;

  const Spectrum sk = eigenvalues(ops.K);
  out.rho_k = sk.spectral_radius();
  const double radius = sk.cluster_radius();
  std::size_t at_rho = 0;
  for (const auto& z : sk.values()) {
    if (std::abs(z - Complex(out.rho_k, 0.0)) <= radius) ++at_rho;
  }
  out.dominant_real_simple = at_rho == 1;

  CVector z = eigenvector_for(ops.K, Complex(out.rho_k, 0.0), 1e-6);
  Eigen::Index arg = 0;
  z.cwiseAbs().maxCoeff(&arg);
  z *= std::conj(z(arg)) / std::abs(z(arg));
  Vector y = z.real().tail(n);
  Eigen::Index big = 0;
  y.cwiseAbs().maxCoeff(&big);
  if (y(big) < 0.0) y = -y;
  const double overlap = out.x.dot(y);
  out.y = std::abs(overlap) > 1e-12 ? Vector(y / overlap) : y;
  const Matrix dm1 = ops.D - Matrix::Identity(n, n);
  out.xt_dm1_y = out.x.dot(dm1 * out.y);
  return out;
}

VerificationReport check_perron_positivity(const Graph& g) {
  const auto t = structure_truth(g);
  if (!perron_hypothesis(t)) {
    return VerificationReport::not_applicable("perron_positivity",
                                              "needs a connected graph with d_min >= 2 that is not a cycle");
  }
  const NBOperators ops = build_operators(g);
  const auto n = ops.A.rows();
  const Spectrum sk = eigenvalues(ops.K);
  const double rho = sk.spectral_radius();

  VerificationReport r;
  r.check = "perron_positivity";
  r.hypotheses["connected_not_cycle_dmin2"] = true;
  r.metadata["rho_K"] = rho;
  if (sk.multiplicity_of(Complex(rho, 0.0)) != 1) {
    r.status = Status::kFail;
    r.metadata["reason"] = "dominant eigenvalue of K is not real and simple";
    return r;
  }
  CVector z = eigenvector_for(ops.K, Complex(rho, 0.0), 1e-6);
  Eigen::Index arg = 0;
  z.cwiseAbs().maxCoeff(&arg);
  z *= std::conj(z(arg)) / std::abs(z(arg));
  Vector top = z.real().head(n);
  Vector y = z.real().tail(n);
  Eigen::Index big = 0;
  y.cwiseAbs().maxCoeff(&big);
  if (y(big) < 0.0) {
    y = -y;
    top = -top;
  }
  y /= y.norm();
  top /= z.real().tail(n).norm();
  const double min_entry = y.minCoeff();
  r.residual = std::max(0.0, -min_entry);
  r.status = min_entry > 0.0 ? Status::kPass : Status::kFail;
  r.metadata["min_entry"] = min_entry;
  r.metadata["form_residual"] = (top + rho * y).norm();
  r.metadata["y"] = std::vector<double>(y.data(), y.data() + y.size());
  return r;
}

std::vector<BoundReport> spectral_radius_bounds(const Graph& g) {
  return spectral_radius_bounds(g, eigenvalues(build_operators(g).B));
}

std::vector<BoundReport> spectral_radius_bounds(const Graph& g, const Spectrum& spectrum_b) {
  const auto t = structure_truth(g);
  const double rho_b = spectrum_b.spectral_radius();
  const double n = static_cast<double>(g.vertex_count());
  const double m = static_cast<double>(g.edge_count());
  const double d_min = static_cast<double>(t.d_min);
  const bool applicable = t.connected && g.edge_count() > 0;

  std::vector<BoundReport> out;

  // rho(B) <= d_max - 1, with equality iff regular.
  {
    BoundReport r;
    r.name = "gershgorin_bound";
    r.hypothesis = applicable;
    r.bound = static_cast<double>(t.d_max) - 1.0;
    r.observed = rho_b;
    r.margin = r.bound - r.observed;
    const bool regular = t.d_min == t.d_max;
    const bool equality = std::abs(r.margin) <= 1e-8;
    r.side_conditions = equality == regular;
    r.detail["regular"] = regular;
    r.detail["equality"] = equality;
    out.push_back(std::move(r));
  }

  // Upper bound from rho(A) and d_min, with the hypothesis
  // rho(A) >= 2 sqrt(x^t (D - I) y). Trees and graphs whose 2-core is a
  // cycle are handled by their own branches; graphs with dangling vertices
  // evaluate the hypothesis on the 2-core.
  BoundReport thm;
  thm.name = "rho_A_upper_bound";
  BoundReport cor;
  cor.name = "edge_count_upper_bound";
  thm.observed = cor.observed = rho_b;

  std::string branch = "not-applicable";
  bool hypothesis = false;
  double rho_a = 0.0;
  if (applicable) {
    const NBOperators ops = build_operators(g);
    rho_a = symmetric_eigenvalues(ops.A).back();
    if (t.is_tree) {
      branch = "tree";
      hypothesis = true;
    } else {
      const TwoCore core = two_core(g);
      const auto core_truth = structure_truth(core.core);
      if (core_truth.is_cycle) {
        branch = t.is_cycle ? "cycle" : "cycle-with-dangling-trees";
        hypothesis = true;
      } else {
        branch = core.removed.empty() ? "perron" : "perron-on-2-core";
        const PerronPair pp = perron_pair(core.removed.empty() ? ops : build_operators(core.core));
        const double required = 2.0 * std::sqrt(std::max(0.0, pp.xt_dm1_y));
        hypothesis = pp.dominant_real_simple && pp.xt_dm1_y >= 0.0 && pp.rho_a >= required - 1e-9;
        thm.detail["xt_DmI_y"] = pp.xt_dm1_y;
        thm.detail["hypothesis_rhs"] = required;
        thm.detail["rho_A_used_for_hypothesis"] = pp.rho_a;
        thm.detail["dominant_real_simple"] = pp.dominant_real_simple;
      }
    }
  }
  thm.hypothesis = cor.hypothesis = hypothesis;
  thm.detail["branch"] = branch;
  thm.detail["rho_A"] = rho_a;
  thm.detail["binding"] = "x = Perron vector of A, y = bottom half of K's dominant eigenvector, x^t y = 1";
  cor.detail = thm.detail;

  thm.bound = (rho_a + std::sqrt(std::max(0.0, rho_a * rho_a - 4.0 * (d_min - 1.0)))) / 2.0;
  thm.margin = thm.bound - thm.observed;

  const double rad1 = 2.0 * m - n - 1.0;
  const double rad2 = 2.0 * m - n - 4.0 * d_min + 3.0;
  cor.detail["radicand_1"] = rad1;
  cor.detail["radicand_2"] = rad2;
  if (rad1 < 0.0 || rad2 < 0.0) {
    cor.bound = NAN;
    cor.margin = NAN;
    cor.detail["note"] = "negative radicand: bound is not a real number";
  } else {
    cor.bound = (std::sqrt(rad1) + std::sqrt(rad2)) / 2.0;
    cor.margin = cor.bound - cor.observed;
  }

  out.push_back(std::move(thm));
  out.push_back(std::move(cor));
  return out;
}

}  // namespace nbspec
