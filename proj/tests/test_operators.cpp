#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "nbspec/operators.hpp"

using namespace nbspec;

TEST_SUITE("operators") {
  TEST_CASE("B on small graphs") {
    CHECK(build_operators(path_graph(2)).B.isZero(0.0));
    CHECK(build_operators(path_graph(2)).B.rows() == 2);
    const Matrix c4 = build_operators(cycle_graph(4)).B;
    CHECK((c4.rowwise().sum().array() == 1.0).all());
    const Matrix k4 = build_operators(complete_graph(4)).B;
    CHECK((k4.rowwise().sum().array() == 2.0).all());
  }

  TEST_CASE("B entries follow the definition") {
    for (const auto& [name, g] : testing::fixtures()) {
      CAPTURE(name);
      const auto ops = build_operators(g);
      const auto& idx = ops.index;
      for (std::size_t e = 0; e < idx.size(); ++e) {
        double row = 0.0;
        for (std::size_t f = 0; f < idx.size(); ++f) {
          const bool expect = idx[e].head == idx[f].tail && idx[e].tail != idx[f].head;
          CHECK(ops.B(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(f)) == (expect ? 1.0 : 0.0));
          row += ops.B(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(f));
        }
        CHECK(row == static_cast<double>(g.degree(idx[e].head)) - 1.0);
      }
      const auto arcs = static_cast<Eigen::Index>(idx.size());
      CHECK((ops.tau * ops.tau - Matrix::Identity(arcs, arcs)).isZero(0.0));
      CHECK(ops.tau == ops.tau.transpose());
      CHECK((ops.tau.rowwise().sum().array() == 1.0).all());
      CHECK(ops.B == ops.C - ops.tau);
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        CHECK(ops.D(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) == static_cast<double>(g.degree(v)));
      }
      const IntMatrix bi = nonbacktracking_integer(g);
      CHECK(bi.cast<double>() == ops.B);
    }
  }

  TEST_CASE("product identities and intertwining") {
    for (const auto& [name, g] : testing::fixtures()) {
      CAPTURE(name);
      const auto ops = build_operators(g);
      const auto ident = verify_product_identities(ops);
      CHECK(ident.passed());
      CHECK(ident.residual == 0.0);
      const auto inter = verify_intertwining(ops);
      CHECK(inter.passed());
      CHECK(inter.residual == 0.0);
    }
    const auto empty = build_operators(empty_graph(0));
    CHECK(verify_product_identities(empty).residual == 0.0);
    CHECK(verify_intertwining(empty).passed());
  }

  TEST_CASE("K characteristic polynomial") {
    const double samples[] = {-1.7, -0.4, 0.3, 0.9, 1.5, 2.2, -2.5, 3.1, 0.05, -0.95};
    for (const auto& [name, g] : testing::fixtures()) {
      CAPTURE(name);
      CHECK(verify_K_charpoly(build_operators(g), samples).passed());
    }
  }

  TEST_CASE("decomposition of K4") {
    const auto ops = build_operators(complete_graph(4));
    const auto dec = build_decomposition(ops);
    CHECK(dec.dim_tau_minus == 3);
    CHECK(dec.dim_tau_plus == 2);
    CHECK(dec.r == 2);
    CHECK(dec.residual <= 1e-10);
    CHECK(dec.report.passed());
    CHECK(verify_decomposition_spectrum(ops, dec).passed());
    CHECK(dec.X.cols() == 2 * 4 + 2 * 2);
  }

  TEST_CASE("decomposition of cycles and pinwheels") {
    const auto c4 = build_operators(cycle_graph(4));
    const auto d4 = build_decomposition(c4);
    CHECK(d4.R.cols() == 0);
    CHECK(d4.residual == 0.0);

    const auto pin = build_operators(pinwheel_graph(2, 3));
    const auto dp = build_decomposition(pin);
    CHECK(dp.r == 1);
    CHECK(dp.residual <= 1e-10);
    CHECK(verify_decomposition_spectrum(pin, dp).passed());
  }

  TEST_CASE("bipartite surplus in the +1 eigenspace of tau") {
    const auto ops = build_operators(complete_bipartite_graph(3, 3));
    const auto dec = build_decomposition(ops);
    // m - n = 3: the cycle space has dimension 4, and bipartite graphs have
    // one extra vector in E_{+1} of tau.
    CHECK(dec.dim_tau_minus == 4);
    CHECK(dec.dim_tau_plus == 4);
    CHECK(dec.r == 3);
    CHECK(dec.report.metadata["surplus_tau_plus"] == 1);
    CHECK(dec.report.passed());
  }

  TEST_CASE("decomposition with trees and several components") {
    const Graph g = disjoint_union(disjoint_union(complete_graph(4), path_graph(3)), cycle_graph(5));
    const auto ops = build_operators(g);
    const auto dec = build_decomposition(ops);
    CHECK(dec.tree_components == 1);
    CHECK(dec.r == 2);
    CHECK(dec.report.passed());
    CHECK(verify_decomposition_spectrum(ops, dec).passed());

    const auto tree = build_operators(random_tree(4, 7));
    const auto dt = build_decomposition(tree);
    CHECK(dt.R.cols() == 0);
    CHECK(dt.report.passed());
    CHECK(verify_decomposition_spectrum(tree, dt).passed());
  }

  TEST_CASE("lifting K eigenvectors") {
    const auto k4 = build_operators(complete_graph(4));
    CVector x(8);
    x << -2, -2, -2, -2, 1, 1, 1, 1;
    const auto lift = lift_K_eigenvector(k4, {2.0, 0.0}, x);
    CHECK_FALSE(lift.annihilated);
    CHECK(lift.report.passed());
    const CVector v = lift.vector;
    CHECK((k4.B.cast<Complex>() * v - 2.0 * v).norm() <= 1e-12);

    // At mu = 1 the eigenvector [-1; 1] is mapped to -S1 + T^t 1 = 0.
    const auto c3 = build_operators(cycle_graph(3));
    CVector y(6);
    y << -1, -1, -1, 1, 1, 1;
    const auto trivial = lift_K_eigenvector(c3, {1.0, 0.0}, y);
    CHECK(trivial.annihilated);
    CHECK(trivial.report.status == Status::kNotApplicable);
    CHECK(trivial.residual == 0.0);

    CHECK_THROWS_AS(lift_K_eigenvector(k4, {3.0, 0.0}, x), PreconditionError);
  }

  TEST_CASE("K inverse") {
    const auto c4 = build_operators(cycle_graph(4));
    const Matrix inv = build_K_inverse(c4);
    CHECK((inv * c4.K - Matrix::Identity(8, 8)).isZero(0.0));

    const auto k4 = build_operators(complete_graph(4));
    CHECK((build_K_inverse(k4) * k4.K - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(build_K_inverse(build_operators(path_graph(3))), PreconditionError);
    // Isolated vertices have D - I = -1, which is invertible.
    CHECK_NOTHROW(build_K_inverse(build_operators(disjoint_union(cycle_graph(3), empty_graph(1)))));
  }

  TEST_CASE("MatrixMarket output") {
    std::ostringstream os;
    write_matrix_market(os, build_operators(path_graph(2)).A);
    CHECK(os.str() == "%%MatrixMarket matrix array real general\n2 2\n0\n1\n1\n0\n");
  }
}
