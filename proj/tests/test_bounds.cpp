#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nbspec/spectra.hpp"

using namespace nbspec;

namespace {

BoundReport find(const std::vector<BoundReport>& rs, const std::string& name) {
  for (const auto& r : rs) {
    if (r.name == name) return r;
  }
  FAIL("missing bound " << name);
  return {};
}

Spectrum spectrum_b(const Graph& g) { return eigenvalues(build_operators(g).B); }
Spectrum spectrum_k(const Graph& g) { return eigenvalues(build_operators(g).K); }

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("minimum modulus") {
    const auto c5 = check_lower_bound_modulus(cycle_graph(5), spectrum_b(cycle_graph(5)));
    CHECK(c5.hypothesis);
    CHECK(c5.observed == doctest::Approx(1.0));
    CHECK(c5.holds());

    const auto k4 = check_lower_bound_modulus(complete_graph(4), spectrum_b(complete_graph(4)));
    CHECK(k4.observed == doctest::Approx(1.0));
    CHECK(k4.to_report().passed());

    const auto p3 = check_lower_bound_modulus(path_graph(3), spectrum_b(path_graph(3)));
    CHECK_FALSE(p3.hypothesis);
    CHECK(p3.observed == 0.0);
    CHECK(p3.to_report().status == Status::kNotApplicable);
  }

  TEST_CASE("rho(K) > 1") {
    const auto k4 = check_rho_K_gt_1(complete_graph(4), spectrum_k(complete_graph(4)));
    CHECK(k4.observed == doctest::Approx(2.0));
    CHECK(k4.holds());

    const auto pin = check_rho_K_gt_1(pinwheel_graph(2, 3), spectrum_k(pinwheel_graph(2, 3)));
    CHECK(pin.observed == doctest::Approx(std::cbrt(3.0)));
    CHECK(pin.to_report().passed());

    const auto c6 = check_rho_K_gt_1(cycle_graph(6), spectrum_k(cycle_graph(6)));
    CHECK_FALSE(c6.hypothesis);
    CHECK(c6.observed == doctest::Approx(1.0));
  }

  TEST_CASE("bound report semantics") {
    BoundReport strict{"s", BoundKind::kStrictLower, true, 1.0, 1.0, 0.0};
    CHECK_FALSE(strict.holds());
    BoundReport upper{"u", BoundKind::kUpper, true, 1.0, 1.0 + 1e-10, -1e-10};
    CHECK(upper.holds());
    upper.side_conditions = false;
    CHECK_FALSE(upper.holds());
    BoundReport undefined{"x", BoundKind::kUpper, true, NAN, 1.0, NAN};
    CHECK_FALSE(undefined.holds());
    CHECK(undefined.to_report().failed());
    CHECK(std::isinf(undefined.to_report().residual));
  }

  TEST_CASE("Perron positivity") {
    const auto k4 = check_perron_positivity(complete_graph(4));
    CHECK(k4.passed());
    for (const double y : k4.metadata["y"]) CHECK(y == doctest::Approx(0.5));

    const auto pin = check_perron_positivity(pinwheel_graph(2, 3));
    CHECK(pin.passed());
    CHECK(pin.metadata["y"].size() == 5);

    const Graph barbell = join_at_vertex(join_at_vertex(cycle_graph(3), 0, path_graph(2), 0), 3, cycle_graph(3), 0);
    CHECK(check_perron_positivity(barbell).passed());
    CHECK(check_perron_positivity(cycle_graph(5)).status == Status::kNotApplicable);
    CHECK(check_perron_positivity(path_graph(4)).status == Status::kNotApplicable);
  }

  TEST_CASE("spectral radius bounds on fixtures") {
    const auto k4 = spectral_radius_bounds(complete_graph(4));
    const auto g = find(k4, "gershgorin_bound");
    CHECK(g.bound == doctest::Approx(2.0));
    CHECK(g.margin == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.holds());
    const auto t = find(k4, "rho_A_upper_bound");
    CHECK(t.hypothesis);
    CHECK(t.bound == doctest::Approx(2.0));
    CHECK(t.holds());

    const auto p3 = spectral_radius_bounds(path_graph(3));
    CHECK(find(p3, "rho_A_upper_bound").observed == 0.0);
    CHECK(find(p3, "rho_A_upper_bound").holds());
    CHECK(find(p3, "rho_A_upper_bound").detail["branch"] == "tree");

    const auto c6 = spectral_radius_bounds(cycle_graph(6));
    const auto tc6 = find(c6, "rho_A_upper_bound");
    CHECK(tc6.bound == doctest::Approx(1.0));
    CHECK(tc6.observed == doctest::Approx(1.0));
    CHECK(tc6.holds());

    const auto dangling = spectral_radius_bounds(join_at_vertex(complete_graph(4), 0, path_graph(3), 0));
    CHECK(find(dangling, "rho_A_upper_bound").detail["branch"] == "perron-on-2-core");
    CHECK(find(dangling, "rho_A_upper_bound").holds());
  }

  TEST_CASE("Gershgorin equality exactly for regular graphs") {
    CHECK(find(spectral_radius_bounds(petersen_graph()), "gershgorin_bound").holds());
    const auto irregular = find(spectral_radius_bounds(pinwheel_graph(2, 3)), "gershgorin_bound");
    CHECK(irregular.margin > 1e-3);
    CHECK(irregular.holds());
  }

  TEST_CASE("edge-count corollary: recorded counterexamples") {
    // Negative radicand for K_4: 2m - n - 4 d_min + 3 = -1.
    const auto k4 = find(spectral_radius_bounds(complete_graph(4)), "edge_count_upper_bound");
    CHECK(k4.hypothesis);
    CHECK(std::isnan(k4.bound));
    CHECK_FALSE(k4.holds());

    // K_5: the bound (sqrt 14 + sqrt 2) / 2 is below rho(B) = 3.
    const auto k5 = find(spectral_radius_bounds(complete_graph(5)), "edge_count_upper_bound");
    CHECK(k5.hypothesis);
    CHECK(k5.bound == doctest::Approx((std::sqrt(14.0) + std::sqrt(2.0)) / 2.0));
    CHECK(k5.observed == doctest::Approx(3.0));
    CHECK_FALSE(k5.holds());

    const auto pin = find(spectral_radius_bounds(pinwheel_graph(2, 3)), "edge_count_upper_bound");
    CHECK(pin.holds());
  }

  TEST_CASE("mu_plus from Perron data equals rho(K)") {
    std::vector<Graph> graphs{complete_graph(4), pinwheel_graph(2, 3), pinwheel_graph(3, 4), petersen_graph(),
                              complete_bipartite_graph(2, 3)};
    for (const auto& g : testing::random_corpus(321, 40, 9, true)) graphs.push_back(two_core(g).core);
    for (const auto& g : graphs) {
      const auto t = structure_truth(g);
      if (!t.connected || t.is_cycle || t.is_tree || t.d_min < 2) continue;
      const auto ops = build_operators(g);
      const PerronPair pp = perron_pair(ops);
      CHECK(pp.dominant_real_simple);
      const auto [plus, minus] = mu_from_lambda(pp.rho_a, pp.x, pp.y, ops.D);
      CHECK(std::abs(plus - pp.rho_k) <= 1e-6);
      CHECK((pp.y.array() > 0.0).all());
      CHECK(pp.x.dot(pp.y) == doctest::Approx(1.0));
    }
  }
}
