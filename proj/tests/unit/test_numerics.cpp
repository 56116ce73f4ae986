#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "vaqw/numerics.hpp"

using namespace vaqw;

TEST_CASE("arithmetic rejects mismatched shapes") {
  const ComplexMatrix a(2, 2);
  const ComplexMatrix b(3, 3);
  CHECK_THROWS_AS(a + b, DimensionError);
  CHECK_THROWS_AS(a * b, DimensionError);
  CHECK_THROWS_AS(ComplexMatrix({{1.0, 2.0}, {3.0}}), DimensionError);
  CHECK_THROWS_AS(a.at(2, 0), DimensionError);
}

TEST_CASE("kron and paulis") {
  const ComplexMatrix xz = kron(pauli_x(), pauli_z());
  CHECK(xz.rows() == 4);
  CHECK(xz(0, 2) == Complex(1.0));
  CHECK(xz(1, 3) == Complex(-1.0));
  CHECK(xz(0, 0) == Complex(0.0));
  const ComplexMatrix xy = pauli_x() * pauli_y();
  CHECK((xy - pauli_z() * Complex(0.0, 1.0)).max_abs() == 0.0);
}

TEST_CASE("operator norm") {
  const Complex d[] = {3.0, Complex(0.0, -4.0), 0.5};
  CHECK(operator_norm(ComplexMatrix::diagonal(d)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(operator_norm(ComplexMatrix(2, 2)) == 0.0);
  std::mt19937_64 rng(7);
  CHECK(operator_norm(oracle::random_unitary(5, rng)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("wrap_phase maps into (-pi, pi]") {
  CHECK(wrap_phase(kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
  for (double x = -20.0; x < 20.0; x += 0.37) {
    const double w = wrap_phase(x);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(std::abs(std::remainder(w - x, 2.0 * kPi)) < 1e-12);
  }
  CHECK(circular_distance(kPi - 0.1, -kPi + 0.1) == doctest::Approx(0.2));
}

TEST_CASE("eigenphases of a diagonal unitary") {
  const Complex d[] = {std::polar(1.0, -0.3), std::polar(1.0, -2.0), std::polar(1.0, 1.0), -1.0};
  const auto ph = eigenphases(ComplexMatrix::diagonal(d));
  REQUIRE(ph.size() == 4);
  CHECK(ph[0] == doctest::Approx(-1.0));
  CHECK(ph[1] == doctest::Approx(0.3));
  CHECK(ph[2] == doctest::Approx(2.0));
  CHECK(ph[3] == doctest::Approx(kPi));
}

TEST_CASE("eigendecomposition agrees with the determinant oracle on random unitaries") {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix u = oracle::random_unitary(n, rng);
      const EigenDecomposition e = eigendecompose(u);
      REQUIRE(e.phases.size() == n);
      CHECK(std::is_sorted(e.phases.begin(), e.phases.end()));
      CHECK(e.max_residual < 1e-10);
      CHECK(unitarity_deviation(e.vectors) < 1e-10);
      for (double w : e.phases) {
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        CHECK(oracle::characteristic_residual(u, w) < 1e-9);
      }
      double phase_sum = 0.0;
      for (double w : e.phases) phase_sum += w;
      const oracle::C det = oracle::determinant(oracle::dense(u));
      CHECK(circular_distance(-phase_sum, std::arg(det)) < 1e-9);
    }
  }
}

TEST_CASE("degenerate spectra keep orthonormal eigenvectors") {
  std::mt19937_64 rng(99);
  const ComplexMatrix v = oracle::random_unitary(6, rng);
  const Complex d[] = {1.0, 1.0, 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), -1.0};
  const ComplexMatrix u = v * ComplexMatrix::diagonal(d) * v.adjoint();
  const EigenDecomposition e = eigendecompose(u);
  CHECK(e.max_residual < 1e-10);
  CHECK(unitarity_deviation(e.vectors) < 1e-10);
  const double expected[] = {0.0, 0.0, 0.0, -kPi / 2.0, -kPi / 2.0, kPi};
  CHECK(multiset_deviation(e.phases, expected) < 1e-10);
}

TEST_CASE("non-unitary input is rejected with its deviation") {
  ComplexMatrix u = ComplexMatrix::identity(3);
  u(0, 1) = 0.1;
  CHECK_THROWS_AS(eigenphases(u), NonUnitaryError);
  try {
    eigenphases(u);
  } catch (const NonUnitaryError& e) {
    CHECK(e.deviation() > 0.05);
  }
  CHECK_THROWS_AS(eigenphases(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("multiset deviation is circular and permutation invariant") {
  const double a[] = {-kPi + 0.01, 0.5, 1.0};
  const double b[] = {1.0, kPi - 0.01, 0.5};
  CHECK(multiset_deviation(a, b) == doctest::Approx(0.02).epsilon(1e-9));
  const double c[] = {0.0, 0.0, 1.0};
  const double d[] = {0.0, 1.0, 1.0};
  CHECK(multiset_deviation(c, d) == doctest::Approx(1.0));
  const double e[] = {0.0};
  CHECK(multiset_deviation(c, e) == std::numeric_limits<double>::infinity());
  CHECK(multisets_equal(a, a, 0.0));
}

TEST_CASE("multiset deviation matches brute force over permutations") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(5), b(5);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    std::vector<std::size_t> perm{0, 1, 2, 3, 4};
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, circular_distance(a[i], b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(multiset_deviation(a, b) == doctest::Approx(best).epsilon(1e-12));
  }
}
