#include <doctest.h>

#include "helpers.hpp"
#include "nbspec/detect.hpp"
#include "nbspec/operators.hpp"

using namespace nbspec;

namespace {

BipartiteDetection bipartite_of(const Graph& g) {
  const auto ops = build_operators(g);
  return detect_bipartite(g, eigenvalues(ops.K), eigenvalues(ops.B));
}

}  // namespace

TEST_SUITE("detect") {
  TEST_CASE("components") {
    CHECK(detect_components(build_operators(disjoint_union(cycle_graph(3), cycle_graph(3))).K) == 2);
    CHECK(detect_components(build_operators(complete_graph(4)).K) == 1);
    const Graph three = disjoint_union(disjoint_union(cycle_graph(3), cycle_graph(4)), path_graph(2));
    CHECK(detect_components(build_operators(three).K) == 3);
    CHECK(detect_components(build_operators(empty_graph(3)).K) == 3);
  }

  TEST_CASE("degree-1 count") {
    CHECK(detect_degree1_count(build_operators(path_graph(3)).K) == 2);
    CHECK(detect_degree1_count(build_operators(cycle_graph(5)).K) == 0);
    CHECK(detect_degree1_count(build_operators(star_graph(4)).K) == 4);
  }

  TEST_CASE("bipartite detectors") {
    const auto c4 = bipartite_of(cycle_graph(4));
    CHECK(c4.applicable);
    CHECK(c4.consistent());
    CHECK(c4.verdict());

    const auto c5 = bipartite_of(cycle_graph(5));
    CHECK(c5.consistent());
    CHECK_FALSE(c5.verdict());
    CHECK_FALSE(c5.via_symmetry_B);

    const auto k33 = bipartite_of(complete_bipartite_graph(3, 3));
    CHECK(k33.consistent());
    CHECK(k33.verdict());

    const auto tree = bipartite_of(random_tree(5, 7));
    CHECK(tree.consistent());
    CHECK(tree.verdict());

    CHECK_FALSE(bipartite_of(disjoint_union(cycle_graph(4), cycle_graph(4))).applicable);
    // Component-wise, C_4 + C_5 gives -1 in sigma(K) from C_4 alone, which is
    // why the whole-graph reading is withheld.
    const Spectrum mixed = eigenvalues(build_operators(disjoint_union(cycle_graph(4), cycle_graph(5))).K);
    CHECK(mixed.count_near({-1.0, 0.0}, 1e-6) > 0);
  }

  TEST_CASE("extremes") {
    CHECK(extremes_symmetric(Spectrum({}, 1e-6)));
    CHECK(extremes_symmetric(Spectrum({{2, 0}, {-2, 0}, {0.5, 0}}, 1e-6)));
    CHECK_FALSE(extremes_symmetric(Spectrum({{2, 0}, {-1, 0}}, 1e-6)));
    // -rho alone, with no real positive eigenvalue of maximal modulus.
    CHECK_FALSE(extremes_symmetric(Spectrum({{-2, 0}, {0, 2}, {0, -2}}, 1e-6)));
  }

  TEST_CASE("structure detection agrees with ground truth on fixtures") {
    for (const auto& [name, g] : testing::fixtures()) {
      CAPTURE(name);
      const auto d = detect_structure(g);
      CHECK(d.all_agree());
      for (const auto& r : detection_reports(d)) CHECK_FALSE(r.failed());
    }
  }

  TEST_CASE("K eigenvector form") {
    const auto k4 = build_operators(complete_graph(4));
    CHECK(verify_K_eigvec_form(k4.K).passed());
    const CVector v = eigenvector_for(k4.K, {2.0, 0.0});
    CHECK((v.head(4) + 2.0 * v.tail(4)).norm() <= 1e-12);

    const auto c4 = build_operators(cycle_graph(4));
    const CVector w = eigenvector_for(c4.K, {0.0, 1.0});
    CHECK((w.head(4) + Complex(0.0, 1.0) * w.tail(4)).norm() <= 1e-10);
    const auto form = verify_K_eigvec_form(c4.K);
    CHECK(form.passed());
    // mu = 1 and -1 are double roots of K for C_4 with one eigenvector each.
    CHECK(form.metadata["defective"].size() == 2);

    const auto p3 = build_operators(path_graph(3));
    const Matrix null = nullspace(p3.K);
    REQUIRE(null.cols() == 2);
    CHECK(null.topRows(3).norm() <= 1e-12);
    CHECK(null.row(3 + 1).norm() <= 1e-12);
    CHECK(verify_K_eigvec_form(p3.K).passed());
  }
}
