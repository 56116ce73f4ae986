#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <map>
#include <sstream>

#include "vaqw/coarse_grain.hpp"
#include "vaqw/evolve.hpp"
#include "vaqw/examples.hpp"

using namespace vaqw;

namespace {

const std::int64_t kOrigin[] = {0, 0};

std::vector<WalkSpec> walks() {
  return {g1_walk({SolutionClass::I, 1.0, 0.0, 1}), g1_walk({SolutionClass::II, 0.6, 0.8, -1}),
          g2_walk(SolutionClass::I), g2_walk(SolutionClass::II)};
}

LatticeState random_state(const WalkSpec& w, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  LatticeState s = LatticeState::zeros_like(w, n);
  for (auto& z : s.amplitudes) z = Complex(g(rng), g(rng));
  const double nrm = norm(s);
  for (auto& z : s.amplitudes) z /= nrm;
  return s;
}

}  // namespace

TEST_CASE("site indexing wraps around the torus") {
  const LatticeState s = LatticeState::zeros(5, 2, 1, 1);
  const std::int64_t v[] = {-1, 6};
  CHECK(s.site_coordinates(s.site_index(v)) == std::vector<std::int64_t>{4, 1});
  CHECK(s.sites() == 25);
}

TEST_CASE("a pure shift translates a delta by -h per step") {
  const Alphabet al({{"t", "T"}});
  const TilingData t(al, 1, {{}}, {{al.id("t"), 0, 0, {1}}, {al.id("T"), 0, 0, {-1}}});
  const WalkSpec w = scalar_walk({al, {}}, t, {1.0, 0.0});
  const std::int64_t start[] = {0};
  LatticeState psi = LatticeState::delta(w, 7, start, 0, 0);
  for (int i = 1; i <= 9; ++i) {
    psi = step(w, psi);
    const std::int64_t expected[] = {-i};
    CHECK(psi.at(psi.site_index(expected), 0, 0) == Complex(1.0));
    CHECK(norm(psi) == 1.0);
  }
}

TEST_CASE("torus size constraint") {
  const WalkSpec w = g1_walk({});
  CHECK_THROWS_AS(step(w, LatticeState::zeros_like(w, 2)), TorusTooSmallError);
  CHECK_NOTHROW(step(w, LatticeState::zeros_like(w, 3)));
  CHECK_THROWS_AS(step(w, LatticeState::zeros(8, 2, 2, 2)), DimensionError);
}

TEST_CASE("norm is conserved for unitary walks") {
  std::mt19937_64 rng(41);
  for (const auto& w : walks()) {
    LatticeState psi = random_state(w, 9, rng);
    for (int i = 0; i < 10; ++i) {
      const double before = norm(psi);
      psi = step(w, psi);
      CHECK(std::abs(norm(psi) - before) < 1e-12);
    }
  }
  const WalkSpec w = g1_walk({SolutionClass::I, 1.0, 0.0, 1});
  const LatticeState psi = evolve_steps(w, LatticeState::delta(w, 16, kOrigin, 0, 0), 10);
  CHECK(std::abs(norm(psi) - 1.0) < 1e-12);
}

TEST_CASE("one G2 step sends |A_g e_0|^2 to each table cell") {
  const WalkSpec w = g2_walk(SolutionClass::I);
  const LatticeState psi = step(w, LatticeState::delta(w, 8, kOrigin, 0, 0));
  std::map<std::pair<std::size_t, std::size_t>, double> expected;
  for (auto g : w.alphabet().all()) {
    const auto& e = w.tiling().entry(g, 0);
    const std::int64_t target[] = {-e.shift[0], -e.shift[1]};
    const ComplexMatrix& a = w.matrix(g);
    expected[{psi.site_index(target), e.target}] += std::norm(a(0, 0)) + std::norm(a(1, 0));
  }
  CHECK(expected.size() == 4);
  const auto p = probability_map(psi);
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    const auto it = expected.find({cell / psi.index, cell % psi.index});
    CHECK(p[cell] == doctest::Approx(it == expected.end() ? 0.0 : it->second).epsilon(1e-15));
  }
  // A_a and A_b carry all the weight of coin 0.
  CHECK(expected.at({0, 1}) == 0.5);
}

TEST_CASE("probability map") {
  const WalkSpec w = g1_walk({});
  const LatticeState d = LatticeState::delta(w, 4, kOrigin, 2, 1);
  const auto p = probability_map(d);
  CHECK(std::count(p.begin(), p.end(), 1.0) == 1);
  CHECK(p[2] == 1.0);
  LatticeState u = LatticeState::zeros_like(w, 4);
  for (auto& z : u.amplitudes) z = 1.0 / std::sqrt(static_cast<double>(u.amplitudes.size()));
  for (double x : probability_map(u)) CHECK(x == doctest::Approx(2.0 / static_cast<double>(u.amplitudes.size())));
  double sum = 0.0;
  for (double x : probability_map(u)) sum += x;
  CHECK(sum == doctest::Approx(norm(u) * norm(u)));
}

TEST_CASE("Fourier evolution agrees with stepping") {
  std::mt19937_64 rng(43);
  for (const auto& w : walks()) {
    CHECK(max_abs_difference(evolve_fourier(w, LatticeState::delta(w, 16, kOrigin, 0, 0), 0),
                             LatticeState::delta(w, 16, kOrigin, 0, 0)) < 1e-14);
    for (std::size_t n : {5u, 16u}) {
      const LatticeState psi = random_state(w, n, rng);
      for (std::size_t steps : {1u, 7u, 25u}) {
        CHECK(max_abs_difference(evolve_fourier(w, psi, steps), evolve_steps(w, psi, steps)) < 1e-10);
      }
    }
  }
}

TEST_CASE("plane-wave eigenstates keep their probability distribution") {
  const WalkSpec w = g2_walk(SolutionClass::II);
  const std::size_t n = 12;
  const std::int64_t m[] = {3, -2};
  const std::vector<double> k{2.0 * kPi * 3 / n, -2.0 * kPi * 2 / n};
  const EigenDecomposition eig = eigendecompose(build_kspace_operator(w, k));
  std::vector<Complex> fiber;
  for (std::size_t c = 0; c < 4; ++c) fiber.push_back(eig.vectors(c, 1));
  const LatticeState psi = LatticeState::plane_wave(w, n, m, fiber);
  CHECK(norm(psi) == doctest::Approx(1.0));
  const LatticeState later = evolve_steps(w, psi, 6);
  const Complex factor = std::polar(1.0, -6.0 * eig.phases[1]);
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) CHECK(std::abs(later.amplitudes[i] - factor * psi.amplitudes[i]) < 1e-12);
  const auto p0 = probability_map(psi);
  const auto p1 = probability_map(later);
  for (std::size_t i = 0; i < p0.size(); ++i) CHECK(std::abs(p0[i] - p1[i]) < 1e-13);
}

TEST_CASE("support stays inside the light cone") {
  for (const auto& w : walks()) {
    LatticeState psi = LatticeState::delta(w, 21, kOrigin, 0, 0);
    for (std::int64_t t = 1; t <= 8; ++t) {
      psi = step(w, psi);
      CHECK(support_radius(psi) <= t * w.tiling().max_shift());
    }
  }
}

TEST_CASE("probability CSV layout") {
  const WalkSpec w = g2_walk(SolutionClass::I);
  std::ostringstream os;
  write_probability_csv(os, LatticeState::delta(w, 3, kOrigin, 1, 0));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x_1,x_2,coset,probability");
  std::getline(in, line);
  CHECK(line == "0,0,0,0");
  std::getline(in, line);
  CHECK(line == "0,0,1,1");
  std::size_t rows = 2;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 18);
}
