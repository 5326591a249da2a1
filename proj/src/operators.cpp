#include "nbspec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace nbspec {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

NBOperators build_operators(const Graph& g) {
  NBOperators ops{g, DirectedEdgeIndex(g), {}, {}, {}, {}, {}, {}, {}, {}};
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  const auto& index = ops.index;
  const auto arcs = static_cast<Eigen::Index>(index.size());

  ops.B = Matrix::Zero(arcs, arcs);
  ops.C = Matrix::Zero(arcs, arcs);
  ops.tau = Matrix::Zero(arcs, arcs);
  ops.S = Matrix::Zero(arcs, n);
  ops.T = Matrix::Zero(n, arcs);
  for (Eigen::Index i = 0; i < arcs; ++i) {
    const auto [u, v] = index[static_cast<std::size_t>(i)];
    ops.S(i, static_cast<Eigen::Index>(v)) = 1.0;
    ops.T(static_cast<Eigen::Index>(u), i) = 1.0;
    ops.tau(i, static_cast<Eigen::Index>(index.reverse_of(static_cast<std::size_t>(i)))) = 1.0;
    for (std::size_t j = index.out_begin(v); j < index.out_begin(v + 1); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      ops.C(i, jj) = 1.0;
      if (index[j].head != u) ops.B(i, jj) = 1.0;
    }
  }

  ops.A = Matrix::Zero(n, n);
  ops.D = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    ops.A(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = 1.0;
    ops.A(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = 1.0;
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    ops.D(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) = static_cast<double>(g.degree(v));

  const Matrix I = Matrix::Identity(n, n);
  ops.K = Matrix::Zero(2 * n, 2 * n);
  ops.K.topLeftCorner(n, n) = ops.A;
  ops.K.topRightCorner(n, n) = ops.D - I;
  ops.K.bottomLeftCorner(n, n) = -I;
  return ops;
}

IntMatrix nonbacktracking_integer(const Graph& g) {
  DirectedEdgeIndex index(g);
  const auto arcs = static_cast<Eigen::Index>(index.size());
  IntMatrix b = IntMatrix::Zero(arcs, arcs);
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto [u, v] = index[i];
    for (std::size_t j = index.out_begin(v); j < index.out_begin(v + 1); ++j)
      if (index[j].head != u) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1;
  }
  return b;
}

VerificationReport verify_product_identities(const NBOperators& ops, double tol) {
  const Matrix st = ops.S * ops.T;
  const double r_c = max_abs(ops.C - st);
  const double r_b = max_abs(ops.B - (st - ops.tau));
  const double r_d = max_abs(ops.D - ops.T * ops.tau * ops.S);
  const double r_a = max_abs(ops.A - ops.T * ops.S);
  auto report = VerificationReport::from_residual("product_identities", std::max({r_c, r_b, r_d, r_a}), tol);
  report.metadata["C=ST"] = r_c;
  report.metadata["B=ST-tau"] = r_b;
  report.metadata["D=T tau S"] = r_d;
  report.metadata["A=TS"] = r_a;
  return report;
}

VerificationReport verify_intertwining(const NBOperators& ops, double tol) {
  Matrix st(ops.S.rows(), ops.S.cols() + ops.T.rows());
  st << ops.S, ops.T.transpose();
  return VerificationReport::from_residual("intertwining", max_abs(ops.B * st - st * ops.K), tol);
}

VerificationReport verify_K_charpoly(const NBOperators& ops, std::span<const double> samples, double tol) {
  const auto n = ops.A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix I2 = Matrix::Identity(2 * n, 2 * n);
  double worst = 0.0;
  nlohmann::json points = nlohmann::json::array();
  for (double mu : samples) {
    const double quad = determinant(mu * mu * I - mu * ops.A + (ops.D - I));
    const double lin = determinant(mu * I2 - ops.K);
    const double rel = std::abs(quad - lin) / std::max(1.0, std::abs(lin));
    worst = std::max(worst, rel);
    points.push_back({{"mu", mu}, {"quadratic", quad}, {"linear", lin}, {"relative", rel}});
  }
  auto report = VerificationReport::from_residual("K_charpoly", worst, tol);
  report.metadata["samples"] = points;
  return report;
}

// ---- decomposition ---------------------------------------------------------

namespace {

// Basis of {x : tau x = sign x, ST x = 0} restricted to the given arcs.
Matrix tau_null_intersection(const Matrix& tau, const Matrix& st, std::span<const Eigen::Index> arcs, double sign) {
  const auto k = static_cast<Eigen::Index>(arcs.size());
  Matrix stacked(2 * k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      stacked(i, j) = tau(arcs[i], arcs[j]) - (i == j ? sign : 0.0);
      stacked(k + i, j) = st(arcs[i], arcs[j]);
    }
  return nullspace(stacked);
}

}  // namespace

Decomposition build_decomposition(const NBOperators& ops, double tol) {
  const Graph& g = ops.graph;
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  const auto arcs = static_cast<Eigen::Index>(ops.index.size());
  const Matrix st = ops.S * ops.T;
  Decomposition dec;

  std::vector<Eigen::Index> all(static_cast<std::size_t>(arcs));
  for (Eigen::Index i = 0; i < arcs; ++i) all[static_cast<std::size_t>(i)] = i;
  dec.dim_tau_minus = static_cast<std::size_t>(tau_null_intersection(ops.tau, st, all, -1.0).cols());
  dec.dim_tau_plus = static_cast<std::size_t>(tau_null_intersection(ops.tau, st, all, +1.0).cols());

  // Per-component selection: each component with m_c >= n_c contributes
  // m_c - n_c columns from each intersection.
  const auto labels = component_labels(g);
  const std::size_t comps = n == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<Eigen::Index>> comp_arcs(comps);
  std::vector<std::size_t> comp_vertices(comps, 0);
  for (Eigen::Index i = 0; i < arcs; ++i) comp_arcs[labels[ops.index[static_cast<std::size_t>(i)].tail]].push_back(i);
  for (Vertex v = 0; v < g.vertex_count(); ++v) ++comp_vertices[labels[v]];

  std::vector<Vector> plus_cols, minus_cols;  // B-eigenvalue +1 and -1
  bool structural_ok = true;
  nlohmann::json per_component = nlohmann::json::array();
  std::size_t surplus = 0;
  for (std::size_t c = 0; c < comps; ++c) {
    const std::size_t m_c = comp_arcs[c].size() / 2;
    const std::size_t n_c = comp_vertices[c];
    if (m_c < n_c) {
      ++dec.tree_components;
      continue;
    }
    const std::size_t want = m_c - n_c;
    if (want == 0) continue;
    Matrix e_minus = tau_null_intersection(ops.tau, st, comp_arcs[c], -1.0);
    Matrix e_plus = tau_null_intersection(ops.tau, st, comp_arcs[c], +1.0);
    per_component.push_back({{"component", c},
                             {"m_minus_n", want},
                             {"dim_tau_minus", e_minus.cols()},
                             {"dim_tau_plus", e_plus.cols()}});
    if (static_cast<std::size_t>(e_minus.cols()) < want || static_cast<std::size_t>(e_plus.cols()) < want) {
      structural_ok = false;
      continue;
    }
    surplus += static_cast<std::size_t>(e_plus.cols()) - want;
    for (std::size_t j = 0; j < want; ++j) {
      Vector col = Vector::Zero(arcs);
      Vector col2 = Vector::Zero(arcs);
      for (std::size_t i = 0; i < comp_arcs[c].size(); ++i) {
        col(comp_arcs[c][i]) = e_minus(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        col2(comp_arcs[c][i]) = e_plus(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
      plus_cols.push_back(std::move(col));
      minus_cols.push_back(std::move(col2));
    }
  }

  dec.r = plus_cols.size();
  const auto r = static_cast<Eigen::Index>(dec.r);
  dec.R = Matrix::Zero(arcs, 2 * r);
  for (Eigen::Index j = 0; j < r; ++j) {
    dec.R.col(j) = plus_cols[static_cast<std::size_t>(j)];
    dec.R.col(r + j) = minus_cols[static_cast<std::size_t>(j)];
  }
  dec.X.resize(arcs, 2 * n + 2 * r);
  dec.X << ops.S, ops.T.transpose(), dec.R;
  dec.block = Matrix::Zero(2 * n + 2 * r, 2 * n + 2 * r);
  dec.block.topLeftCorner(2 * n, 2 * n) = ops.K;
  for (Eigen::Index j = 0; j < r; ++j) {
    dec.block(2 * n + j, 2 * n + j) = 1.0;
    dec.block(2 * n + r + j, 2 * n + r + j) = -1.0;
  }
  dec.residual = max_abs(ops.B * dec.X - dec.X * dec.block);

  dec.report = VerificationReport::from_residual("decomposition", dec.residual, tol);
  if (!structural_ok) dec.report.status = Status::kFail;
  dec.report.hypotheses["connected"] = comps == 1;
  dec.report.metadata["r"] = dec.r;
  dec.report.metadata["dim_tau_minus_null_st"] = dec.dim_tau_minus;
  dec.report.metadata["dim_tau_plus_null_st"] = dec.dim_tau_plus;
  dec.report.metadata["surplus_tau_plus"] = surplus;
  dec.report.metadata["tree_components"] = dec.tree_components;
  dec.report.metadata["structural"] = structural_ok ? "ok" : "insufficient intersection dimension";
  dec.report.metadata["components"] = per_component;
  dec.report.metadata["rank_tolerance"] = tolerance::kRank;
  return dec;
}

VerificationReport verify_decomposition_spectrum(const NBOperators& ops, const Decomposition& dec, double tol) {
  std::vector<Complex> lhs = eigenvalues(ops.B).values();
  for (std::size_t i = 0; i < dec.tree_components; ++i) {
    lhs.emplace_back(1.0, 0.0);
    lhs.emplace_back(-1.0, 0.0);
  }
  const std::vector<Complex> rhs = eigenvalues(dec.block).values();
  auto match = match_multisets(lhs, rhs, tol);
  VerificationReport report;
  report.check = "decomposition_spectrum";
  report.residual = match.matched ? match.max_distance : INFINITY;
  report.status = match.matched ? Status::kPass : Status::kFail;
  report.metadata["tolerance"] = tol;
  report.metadata["unmatched"] = match.unmatched;
  report.metadata["dim_B"] = ops.B.rows();
  report.metadata["dim_block"] = dec.block.rows();
  return report;
}

LiftedEigenvector lift_K_eigenvector(const NBOperators& ops, Complex mu, const CVector& x_k, double tol) {
  const auto n = ops.A.rows();
  if (x_k.size() != 2 * n) throw PreconditionError("lift_K_eigenvector: vector has wrong length");
  const CMatrix K = ops.K.cast<Complex>();
  const double scale_k = std::max(1.0, ops.K.norm());
  const double k_residual = (K * x_k - mu * x_k).norm() / std::max(1e-300, x_k.norm());
  if (k_residual > 10.0 * tol * scale_k) {
    throw PreconditionError("lift_K_eigenvector: input is not an eigenpair of K (residual " +
                            std::to_string(k_residual) + ")");
  }

  LiftedEigenvector out;
  out.vector = ops.S.cast<Complex>() * x_k.head(n) + ops.T.transpose().cast<Complex>() * x_k.tail(n);
  const CMatrix B = ops.B.cast<Complex>();
  out.residual = (B * out.vector - mu * out.vector).norm();
  const double scale_b = std::max(1.0, ops.B.norm());
  out.annihilated = out.vector.norm() <= 10.0 * tol * x_k.norm();

  out.report.check = "lift_K_eigenvector";
  out.report.residual = out.residual;
  out.report.metadata["mu"] = {mu.real(), mu.imag()};
  out.report.metadata["lifted_norm"] = out.vector.norm();
  out.report.metadata["tolerance"] = 10.0 * tol * scale_b;
  if (out.annihilated) {
    out.report.status = Status::kNotApplicable;
    out.report.metadata["reason"] = "lift annihilates the eigenvector (X [x;0;0] = 0)";
  } else {
    out.report.status = out.residual <= 10.0 * tol * scale_b * out.vector.norm() ? Status::kPass : Status::kFail;
  }
  return out;
}

Matrix build_K_inverse(const NBOperators& ops, double tol) {
  const auto n = ops.A.rows();
  for (Eigen::Index v = 0; v < n; ++v) {
    if (ops.D(v, v) == 1.0) {
      throw PreconditionError("K is singular: vertex " + std::to_string(v) +
                              " has degree 1 (nullity of K equals the number of degree-1 vertices)");
    }
  }
  const Matrix I = Matrix::Identity(n, n);
  Vector inv_diag = (ops.D.diagonal().array() - 1.0).inverse();
  Matrix k_inv = Matrix::Zero(2 * n, 2 * n);
  k_inv.topRightCorner(n, n) = -I;
  k_inv.bottomLeftCorner(n, n) = inv_diag.asDiagonal();
  k_inv.bottomRightCorner(n, n) = inv_diag.asDiagonal() * ops.A;

  const Matrix I2 = Matrix::Identity(2 * n, 2 * n);
  const double residual = std::max(max_abs(ops.K * k_inv - I2), max_abs(k_inv * ops.K - I2));
  if (residual > tol) {
    throw Error("K inverse check failed: residual " + std::to_string(residual));
  }
  return k_inv;
}

void write_matrix_market(std::ostream& os, const Matrix& m) {
  os << "%%MatrixMarket matrix array real general\n";
  os << m.rows() << ' ' << m.cols() << '\n';
  const auto precision = os.precision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) os << m(i, j) << '\n';
  os.precision(precision);
}

}  // namespace nbspec
