#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "nbspec/linalg.hpp"
#include "nbspec/operators.hpp"

using namespace nbspec;
using testing::count_near;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(static_cast<int>(rng() % 7) - 3);
  return m;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("determinant") {
    CHECK(determinant(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
    CHECK(determinant(Vector(Vector::LinSpaced(2, 2.0, 3.0)).asDiagonal().toDenseMatrix()) == doctest::Approx(6.0));
    const Matrix b = build_operators(path_graph(3)).B;
    CHECK(determinant(Matrix::Identity(4, 4) - b) == doctest::Approx(1.0));
    CHECK(determinant(Matrix(0, 0)) == 1.0);
  }

  TEST_CASE("eigenvalues of small fixtures") {
    const auto c4 = eigenvalues(build_operators(cycle_graph(4)).A).values();
    REQUIRE(c4.size() == 4);
    CHECK(count_near(c4, 2.0) == 1);
    CHECK(count_near(c4, 0.0) == 2);
    CHECK(count_near(c4, -2.0) == 1);

    const auto zero = eigenvalues(Matrix::Zero(4, 4)).values();
    CHECK(count_near(zero, 0.0) == 4);

    Matrix p(3, 3);
    p << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    const auto roots = eigenvalues(p).values();
    for (int j = 0; j < 3; ++j) CHECK(count_near(roots, std::polar(1.0, 2.0 * std::numbers::pi * j / 3.0)) == 1);
  }

  TEST_CASE("defective zero block is exact") {
    // Single nilpotent Jordan block: perturbation theory would put the
    // eigenvalues on a circle of radius eps^(1/8).
    Matrix j = Matrix::Zero(8, 8);
    for (Eigen::Index i = 0; i + 1 < 8; ++i) j(i, i + 1) = 1.0;
    const Spectrum s = eigenvalues(j);
    CHECK(s.spectral_radius() <= 1e-12);
    CHECK(s.clusters().size() == 1);
  }

  TEST_CASE("spectrum clustering") {
    const Spectrum s({{1.0, 0.0}, {1.0 + 1e-9, 0.0}, {-2.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}, 1e-6);
    CHECK(s.spectral_radius() == doctest::Approx(2.0));
    CHECK(s.min_modulus() == doctest::Approx(1.0));
    const auto cl = s.clusters();
    REQUIRE(cl.size() == 4);
    CHECK(cl[0].multiplicity == 2);
    CHECK(cl[0].value.real() == doctest::Approx(1.0));
    CHECK(cl.back().value.real() == doctest::Approx(-2.0));
    CHECK(s.multiplicity_of({1.0, 0.0}) == 2);
    CHECK(Spectrum({}, 1e-6).spectral_radius() == 0.0);
  }

  TEST_CASE("nullspace and rank") {
    CHECK(nullspace(Matrix(Matrix::Identity(3, 3))).cols() == 0);
    CHECK(nullspace(Matrix(Matrix::Zero(2, 3))).cols() == 3);
    CHECK(nullspace(build_operators(path_graph(3)).K).cols() == 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % 5);
      const Eigen::Index c = 1 + static_cast<Eigen::Index>(rng() % 7);
      Matrix m(r, c);
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index k = 0; k < c; ++k) m(i, k) = static_cast<double>(static_cast<int>(rng() % 3) - 1);
      const Matrix ns = nullspace(m);
      CHECK(numerical_rank(m) + static_cast<std::size_t>(ns.cols()) == static_cast<std::size_t>(c));
      if (ns.cols() > 0) CHECK((m * ns).norm() <= 1e-10);
    }
  }

  TEST_CASE("eigenvector_for") {
    const CVector e = eigenvector_for(Matrix::Identity(2, 2), {1.0, 0.0});
    CHECK(e.norm() == doctest::Approx(1.0));

    const CVector u = eigenvector_for(build_operators(complete_graph(4)).A, {3.0, 0.0});
    for (Eigen::Index i = 1; i < 4; ++i) CHECK(std::abs(std::abs(u(i)) - std::abs(u(0))) <= 1e-12);

    const Matrix b = build_operators(cycle_graph(3)).B;
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const CVector v = eigenvector_for(b, w);
    CHECK((b.cast<Complex>() * v - w * v).norm() <= 1e-10);

    CHECK_THROWS_AS(eigenvector_for(b, {0.5, 0.0}), PreconditionError);
  }

  TEST_CASE("power iteration") {
    CHECK(power_iteration_perron(build_operators(complete_graph(4)).B).rho == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(power_iteration_perron(Matrix::Identity(3, 3)).rho == doctest::Approx(1.0));
    const auto pin = power_iteration_perron(build_operators(pinwheel_graph(2, 3)).B);
    CHECK(pin.rho == doctest::Approx(std::cbrt(3.0)).epsilon(1e-9));
    CHECK(pin.vector.minCoeff() >= -1e-12);

    // C_4's B is periodic; the fallback must still return rho = 1.
    const auto c4 = power_iteration_perron(build_operators(cycle_graph(4)).B);
    CHECK(c4.rho == doctest::Approx(1.0));

    // Trees give a nilpotent B.
    const auto p4 = power_iteration_perron(build_operators(path_graph(4)).B);
    CHECK(p4.degenerate);
    CHECK(p4.rho == 0.0);
    CHECK(power_iteration_perron(Matrix::Zero(3, 3)).degenerate);
  }

  TEST_CASE("multiset matching") {
    const std::vector<Complex> a{{1, 0}, {1, 0}, {0, 1}};
    const std::vector<Complex> b{{0, 1}, {1, 1e-9}, {1, -1e-9}};
    const auto m = match_multisets(a, b);
    CHECK(m.matched);
    CHECK(m.pairs.size() == 3);

    const std::vector<Complex> c{{1, 0}, {0, 1}, {0, 1}};
    const auto bad = match_multisets(a, c);
    CHECK_FALSE(bad.matched);
    CHECK(bad.unmatched == 2);

    const std::vector<Complex> sym{{1, 0}, {-1, 0}, {0, 2}, {0, -2}};
    CHECK(symmetric_under_negation(sym));
    const std::vector<Complex> asym{{1, 0}, {-1, 0}, {2, 0}};
    CHECK_FALSE(symmetric_under_negation(asym));
  }

  TEST_CASE("integer power") {
    IntMatrix m(2, 2);
    m << 1, 1, 1, 0;
    CHECK(integer_power(m, 0) == IntMatrix::Identity(2, 2));
    CHECK(integer_power(m, 10)(0, 0) == 89);
  }

  TEST_CASE("eigenvalue invariants on random integer matrices") {
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 40; ++t) {
      const auto n = static_cast<Eigen::Index>(2 + rng() % 14);
      const Matrix m = random_matrix(rng, n);
      const auto vals = eigenvalues(m).values();
      REQUIRE(vals.size() == static_cast<std::size_t>(n));

      Complex sum = 0.0;
      Complex prod = 1.0;
      for (const auto& z : vals) {
        sum += z;
        prod *= z;
      }
      CHECK(std::abs(sum - m.trace()) <= 1e-8 * static_cast<double>(n) * std::max(1.0, m.norm()));
      const double det = determinant(m);
      CHECK(std::abs(prod - det) <= 1e-6 * std::max(1.0, std::abs(det)));

      std::vector<Complex> conj(vals.size());
      std::transform(vals.begin(), vals.end(), conj.begin(), [](Complex z) { return std::conj(z); });
      CHECK(match_multisets(vals, conj, 1e-9).matched);

      const auto tvals = eigenvalues(Matrix(m.transpose())).values();
      CHECK(match_multisets(vals, tvals).matched);
    }
  }
}
