// Built-in walks on two planar virtually Abelian groups.
//
//   G1 = < a, b | a^4, b^4, (ab)^2 >, H = < h_x = a^-1 b, h_y = b a^-1 >,
//        index 4, representatives c_j = a^j.
//   G2 = < a, b | a^2 b^-2 >,          H = < h_2 = a^2, h_3 = a^-1 b >,
//        index 2, representatives e, a^-1.
//
// Coset tables are transcribed from the explicit generator actions on coset
// plane waves; validate_tiling re-checks them against the relators.
#ifndef VAQW_EXAMPLES_HPP
#define VAQW_EXAMPLES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vaqw/coarse_grain.hpp"
#include "vaqw/walk.hpp"

namespace vaqw {

enum class SolutionClass { I, II };

std::string_view to_string(SolutionClass c);
SolutionClass parse_solution_class(std::string_view s);

// ---- G1 -----------------------------------------------------------------

/// Isotropic s = 2 walks on G1: Z (canonical class I or II), where
/// Z = n I + sign i m sigma_x and the canonical matrices use
/// zeta = (1 + sign i) / 2.
struct G1Params {
  SolutionClass solution = SolutionClass::I;
  double n = 1.0;
  double m = 0.0;
  int sign = +1;

  /// Throws std::invalid_argument unless n, m >= 0, n^2 + m^2 = 1 (1e-12)
  /// and sign is +1 or -1.
  void validate() const;
};

/// Parses "n=0.6,m=0.8,class=I,sign=+"; omitted m is completed from n.
G1Params parse_g1_params(std::string_view text);
std::string format_g1_params(const G1Params& p);

GroupPresentation g1_presentation();
TilingData g1_tiling();
TransitionFamily g1_canonical_transitions(const Alphabet& alphabet, SolutionClass solution, int sign);
WalkSpec g1_walk(const G1Params& p);

/// a <-> b with sigma_x on the coin.
IsotropySpec g1_isotropy(const Alphabet& alphabet);

/// The parameter entering alpha for the built family: m for class I, n for class II.
double g1_effective_nu(const G1Params& p);

/// sqrt(1 - nu^2) with nu = g1_effective_nu(p).
double g1_mass(const G1Params& p);

/// alpha(nu, k) = nu sqrt((cos^2(k_x/2) + cos^2(k_y/2)) / 2), k = (k_x, k_y).
double g1_alpha(std::span<const double> k, double nu);

/// The stated closed form {+-arccos alpha - pi/4, +-arccos alpha - pi/4 - pi},
/// each twice. Note: the built walks do not follow this (see
/// g1_dispersion_oracle).
std::vector<double> g1_closed_form(std::span<const double> k, double nu);

/// Closed-form spectrum of the built 8x8 A_k:
/// {+-arccos alpha + phi, +-arccos alpha + phi - pi}, each twice, with
/// (nu, phi) = (m, pi/2) for class I and (n, 0) for class II.
std::vector<double> g1_dispersion_oracle(std::span<const double> k, const G1Params& p);

// ---- G2 -----------------------------------------------------------------

GroupPresentation g2_presentation();
TilingData g2_tiling();
TransitionFamily g2_transitions(const Alphabet& alphabet, SolutionClass solution);
WalkSpec g2_walk(SolutionClass solution);

/// Y = (I + i sigma_y) / sqrt(2).
ComplexMatrix g2_y();

/// a <-> b with sigma_z (solution I) or Y sigma_z Y^dagger (solution II).
IsotropySpec g2_isotropy(const Alphabet& alphabet, SolutionClass solution);

/// (k_x, k_y) = (k_2 + k_3, k_2 - k_3) from basis pairings (k_2, k_3).
std::pair<double, double> g2_kxky(std::span<const double> k);
/// Inverse of g2_kxky.
std::vector<double> g2_basis_from_kxky(double kx, double ky);

double g2_alpha(std::span<const double> k);

/// {+-arccos alpha + pi/2, +-arccos alpha + pi/2 + pi}.
std::vector<double> g2_closed_form(std::span<const double> k);

/// B_k = e^{-ik_x/2} A_a + e^{-ik_y/2} A_b + e^{ik_y/2} A_a^-1 + e^{ik_x/2} A_b^-1.
ComplexMatrix g2_b_matrix(const WalkSpec& w, std::span<const double> k);

/// sigma_z (x) (B_k U), U the isotropy coin of the solution (sigma_z or -sigma_x).
ComplexMatrix g2_reduced_operator(const WalkSpec& w, std::span<const double> k, SolutionClass solution);

/// V (R (x) I) (sigma_z (x) B_k U) (R^dagger (x) I) V^dagger with R Hadamard and
/// V = diag(I, e^{ik_y/2} U); equals A_k exactly.
ComplexMatrix g2_factorized_operator(const WalkSpec& w, std::span<const double> k, SolutionClass solution);

// ---- helpers --------------------------------------------------------------

/// Coin-dimension-1 walk on an existing presentation/tiling.
WalkSpec scalar_walk(const GroupPresentation& p, const TilingData& t, const std::vector<Complex>& values);

/// Adds eps to entry (row, col) of A_g.
WalkSpec perturb_entry(const WalkSpec& w, GeneratorId g, std::size_t row, std::size_t col, Complex eps);

// ---- verification suite ---------------------------------------------------

struct SuiteConfig {
  std::uint64_t seed = 20160531;
  std::size_t scalar_samples = 1000;
  std::size_t parameter_samples = 11;
  double tolerance = 1e-12;
  double infeasibility_floor = 1e-3;
  /// Replace the built-in G2 walks (e.g. to check that a tampered matrix is caught).
  std::optional<WalkSpec> g2_solution_one;
  std::optional<WalkSpec> g2_solution_two;
};

struct SuiteItem {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

struct AppendixReport {
  std::vector<SuiteItem> items;

  bool all_passed() const;
  const SuiteItem* find(std::string_view id) const;
  std::string summary() const;
};

AppendixReport appendix_verification_suite(const SuiteConfig& config = {});

}  // namespace vaqw

#endif  // VAQW_EXAMPLES_HPP
