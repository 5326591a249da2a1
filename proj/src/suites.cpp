#include "nbspec/suites.hpp"

#include <array>
#include <optional>

#include "nbspec/detect.hpp"
#include "nbspec/operators.hpp"
#include "nbspec/oracles.hpp"
#include "nbspec/spectra.hpp"

namespace nbspec {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 6> kSuiteNames{{
    {Suite::kAll, "all"},
    {Suite::kIhara, "ihara"},
    {Suite::kDecomposition, "decomposition"},
    {Suite::kBounds, "bounds"},
    {Suite::kDetect, "detect"},
    {Suite::kOracle, "oracle"},
}};

constexpr double kCharpolySamples[] = {0.5, 2.0, -1.0};
constexpr unsigned kMaxSuiteWalkLength = 6;

// Shared state so "all" computes each spectrum once.
struct Context {
  const Graph& g;
  double tol;
  NBOperators ops;
  StructureTruth truth;
  std::optional<Spectrum> sb, sk;

  Context(const Graph& graph, double t) : g(graph), tol(t), ops(build_operators(graph)), truth(structure_truth(graph)) {}

  const Spectrum& spectrum_b() {
    if (!sb) sb = eigenvalues(ops.B);
    return *sb;
  }
  const Spectrum& spectrum_k() {
    if (!sk) sk = eigenvalues(ops.K);
    return *sk;
  }
};

VerificationReport failure(std::string check, const std::exception& e) {
  VerificationReport r;
  r.check = std::move(check);
  r.status = Status::kFail;
  r.residual = INFINITY;
  r.metadata["error"] = e.what();
  return r;
}

void ihara_suite(Context& c, std::vector<VerificationReport>& out) {
  out.push_back(ihara_check(c.g));
  out.push_back(verify_K_charpoly(c.ops, kDefaultIharaSamples));
}

VerificationReport lift_all(Context& c) {
  VerificationReport r;
  r.check = "lift_K_eigenvectors";
  r.status = Status::kPass;
  std::size_t lifted = 0;
  std::size_t annihilated = 0;
  for (const auto& cl : c.spectrum_k().clusters()) {
    if (cl.multiplicity != 1) continue;
    try {
      const CVector x = eigenvector_for(c.ops.K, cl.value, 1e-9);
      const auto lift = lift_K_eigenvector(c.ops, cl.value, x, 1e-9);
      if (lift.annihilated) {
        ++annihilated;
        continue;
      }
      ++lifted;
      r.residual = std::max(r.residual, lift.residual / lift.vector.norm());
      if (lift.report.failed()) r.status = Status::kFail;
    } catch (const Error& e) {
      return failure("lift_K_eigenvectors", e);
    }
  }
  r.metadata["lifted"] = lifted;
  r.metadata["annihilated"] = annihilated;
  return r;
}

VerificationReport k_inverse_report(Context& c) {
  if (c.truth.degree1_count > 0) {
    return VerificationReport::not_applicable("K_inverse", "graph has a degree-1 vertex");
  }
  try {
    build_K_inverse(c.ops);
    VerificationReport r;
    r.check = "K_inverse";
    r.status = Status::kPass;
    return r;
  } catch (const Error& e) {
    return failure("K_inverse", e);
  }
}

void decomposition_suite(Context& c, std::vector<VerificationReport>& out) {
  out.push_back(verify_product_identities(c.ops));
  out.push_back(verify_intertwining(c.ops));
  const Decomposition dec = build_decomposition(c.ops);
  out.push_back(dec.report);
  out.push_back(verify_decomposition_spectrum(c.ops, dec, c.tol));
  out.push_back(lift_all(c));
  out.push_back(k_inverse_report(c));
}

void bounds_suite(Context& c, std::vector<VerificationReport>& out) {
  out.push_back(check_lower_bound_modulus(c.g, c.spectrum_b()).to_report());
  out.push_back(check_rho_K_gt_1(c.g, c.spectrum_k()).to_report());
  out.push_back(check_perron_positivity(c.g));
  for (const auto& b : spectral_radius_bounds(c.g, c.spectrum_b())) out.push_back(b.to_report());
}

void detect_suite(Context& c, std::vector<VerificationReport>& out) {
  const auto d = detect_structure(c.g, c.ops.K, c.spectrum_k(), c.spectrum_b(), c.tol);
  for (auto& r : detection_reports(d)) out.push_back(std::move(r));
  out.push_back(verify_K_eigvec_form(c.ops.K));
  if (c.truth.is_tree) out.push_back(k_tree_spectrum_check(c.g));
}

void oracle_suite(Context& c, std::vector<VerificationReport>& out) {
  out.push_back(irreducibility_check(c.g));
  if (c.g.edge_count() > kMaxWalkEdges) {
    out.push_back(VerificationReport::not_applicable("walk_counts", "more than 20 edges"));
  } else if (c.g.edge_count() > 0) {
    for (unsigned k = 1; k <= kMaxSuiteWalkLength; ++k) out.push_back(verify_Bk_equals_walkcounts(c.g, k));
  }
  if (c.truth.is_tree && c.g.vertex_count() > 1) {
    if (c.ops.B.rows() <= 20) {
      auto r = charpoly_spotcheck(c.ops.B, kCharpolySamples);
      r.check = "tree_B_charpoly";
      out.push_back(std::move(r));
    }
    if (c.g.vertex_count() <= 21) {
      auto r = charpoly_spotcheck(rooted_tree_edge_matrix(c.g), kCharpolySamples);
      r.check = "rooted_tree_C_charpoly";
      out.push_back(std::move(r));
    }
  }
}

void closed_form_suite(Context& c, std::vector<VerificationReport>& out) {
  if (c.truth.is_tree) out.push_back(compare_closed_form(tree_spectrum(c.g), c.ops.B, c.tol));
  if (c.truth.is_cycle) out.push_back(compare_closed_form(cycle_spectrum(c.g.vertex_count()), c.ops.B, c.tol));
  if (c.truth.connected && c.g.edge_count() > 0 && c.truth.d_min == c.truth.d_max) {
    out.push_back(compare_closed_form(regular_spectrum(c.g), c.ops.B, c.tol));
  }
}

}  // namespace

std::string_view to_string(Suite s) {
  for (const auto& [suite, name] : kSuiteNames) {
    if (suite == s) return name;
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (const auto& [suite, n] : kSuiteNames) {
    if (n == name) return suite;
  }
  return std::nullopt;
}

std::vector<VerificationReport> run_suite(const Graph& g, Suite suite, double tol) {
  Context c(g, tol);
  std::vector<VerificationReport> out;
  switch (suite) {
    case Suite::kIhara: ihara_suite(c, out); break;
    case Suite::kDecomposition: decomposition_suite(c, out); break;
    case Suite::kBounds: bounds_suite(c, out); break;
    case Suite::kDetect: detect_suite(c, out); break;
    case Suite::kOracle: oracle_suite(c, out); break;
    case Suite::kAll:
      closed_form_suite(c, out);
      ihara_suite(c, out);
      decomposition_suite(c, out);
      bounds_suite(c, out);
      detect_suite(c, out);
      oracle_suite(c, out);
      break;
  }
  return out;
}

}  // namespace nbspec
