// Position-space evolution of the coarse-grained walk on the torus Z_N^d.
//
// One step sends the amplitude at (v, j) along every generator g to
// (v - h_{j,g} mod N, j'(g, j)) after applying A_g to the coin. On the torus
// this equals A_k fiberwise at the allowed momenta k = 2 pi m / N, which
// evolve_fourier uses as an independent route.
#ifndef VAQW_EVOLVE_HPP
#define VAQW_EVOLVE_HPP

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "vaqw/numerics.hpp"
#include "vaqw/walk.hpp"

namespace vaqw {

class TorusTooSmallError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Amplitudes indexed [site][coset][coin]; sites are flattened with the first
/// axis slowest and coordinates in 0..N-1.
struct LatticeState {
  std::size_t torus = 0;
  std::size_t dimension = 0;
  std::size_t index = 0;
  std::size_t coin_dim = 0;
  std::vector<Complex> amplitudes;

  static LatticeState zeros(std::size_t torus, std::size_t dimension, std::size_t index, std::size_t coin_dim);
  static LatticeState zeros_like(const WalkSpec& w, std::size_t torus);
  /// |v> (x) |coset> (x) |coin>.
  static LatticeState delta(const WalkSpec& w, std::size_t torus, std::span<const std::int64_t> site,
                            std::size_t coset, std::size_t coin);
  /// psi(v, .) = e^{-i k.v} fiber / sqrt(N^d), k = 2 pi m / N.
  static LatticeState plane_wave(const WalkSpec& w, std::size_t torus, std::span<const std::int64_t> m,
                                 std::span<const Complex> fiber);

  std::size_t sites() const noexcept;
  std::size_t fiber() const noexcept { return index * coin_dim; }
  std::vector<std::int64_t> site_coordinates(std::size_t site) const;
  std::size_t site_index(std::span<const std::int64_t> coordinates) const;  // reduced mod N

  Complex& at(std::size_t site, std::size_t coset, std::size_t coin) {
    return amplitudes[(site * index + coset) * coin_dim + coin];
  }
  Complex at(std::size_t site, std::size_t coset, std::size_t coin) const {
    return amplitudes[(site * index + coset) * coin_dim + coin];
  }
};

/// Throws TorusTooSmallError unless N >= 2 max|h|_inf + 1, and DimensionError
/// when the state does not match the walk.
void check_torus(const WalkSpec& w, const LatticeState& psi);

LatticeState step(const WalkSpec& w, const LatticeState& psi);
LatticeState evolve_steps(const WalkSpec& w, LatticeState psi, std::size_t steps);

/// DFT, multiply each momentum fiber by A_k^steps, inverse DFT.
LatticeState evolve_fourier(const WalkSpec& w, const LatticeState& psi, std::size_t steps);

double norm(const LatticeState& psi);

/// Sum of |amplitude|^2 over the coin, indexed [site * index + coset].
std::vector<double> probability_map(const LatticeState& psi);

double max_abs_difference(const LatticeState& a, const LatticeState& b);

/// Largest torus distance (inf-norm, wrap-aware) from the origin among cells
/// with |amplitude| > threshold.
std::int64_t support_radius(const LatticeState& psi, double threshold = 1e-14);

/// "x_1,...,x_d,coset,probability", one row per (site, coset).
void write_probability_csv(std::ostream& out, const LatticeState& psi);

}  // namespace vaqw

#endif  // VAQW_EVOLVE_HPP
