// Brillouin-zone sweeps and finite-difference band analysis.
//
// Bands are indexed by sorted phase at each k. Derivatives follow band r by
// nearest circular distance at the stencil points, which is sound only while
// r stays separated (gap > crossing_factor * h) from every phase outside its
// own exactly degenerate cluster.
#ifndef VAQW_SPECTRAL_HPP
#define VAQW_SPECTRAL_HPP

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "vaqw/coarse_grain.hpp"
#include "vaqw/walk.hpp"

namespace vaqw {

class BandCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid index m runs over -ceil(N/2)+1 .. floor(N/2); k = 2 pi m / N.
int grid_offset(std::size_t resolution, std::size_t i);
double grid_coordinate(std::size_t resolution, std::size_t i);

struct DispersionGrid {
  std::size_t resolution = 0;
  std::size_t dimension = 0;
  std::size_t bands = 0;
  std::vector<double> phases;  // [point * bands + r], ascending per point

  std::size_t points() const noexcept { return bands == 0 ? 0 : phases.size() / bands; }
  /// Per-axis grid indices of a flattened point; the first axis varies slowest.
  std::vector<std::size_t> indices(std::size_t point) const;
  std::size_t point(std::span<const std::size_t> indices) const;
  std::vector<double> k_point(std::size_t point) const;
  std::span<const double> phases_at(std::size_t point) const;
};

/// threads = 0 uses the hardware concurrency. Throws std::invalid_argument for
/// N < 2; eigensolver failures are rethrown with the offending k attached.
DispersionGrid dispersion_grid(const WalkSpec& w, std::size_t resolution, unsigned threads = 0);

/// Max over points of multiset_deviation(grid phases, oracle(k)).
template <class Oracle>
double max_oracle_deviation(const DispersionGrid& grid, Oracle&& oracle) {
  double worst = 0.0;
  for (std::size_t p = 0; p < grid.points(); ++p) {
    const std::vector<double> expected = oracle(grid.k_point(p));
    worst = std::max(worst, multiset_deviation(grid.phases_at(p), expected));
  }
  return worst;
}

/// Largest multiset step along any grid line, wrap-around step included.
double phase_continuity(const DispersionGrid& grid);

/// max - min of all phases in the grid.
double phase_spread(const DispersionGrid& grid);

struct DerivativeConfig {
  double velocity_step = 1e-5;
  double curvature_step = 1e-3;
  bool richardson = true;
  double extremum_gradient_tolerance = 1e-6;
  double crossing_factor = 10.0;
  double degeneracy_tolerance = 1e-9;
};

/// Central-difference gradient of band r.
std::vector<double> group_velocity(const KSpaceOperator& op, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg = {});
std::vector<double> group_velocity(const WalkSpec& w, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg = {});

/// Pure second partials of band r at an extremum; throws std::domain_error
/// when the gradient exceeds extremum_gradient_tolerance.
std::vector<double> band_curvature(const KSpaceOperator& op, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg = {});
std::vector<double> band_curvature(const WalkSpec& w, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg = {});

/// (omega_r(k + delta u) - omega_r(k)) / delta with sorted indices at both
/// points; no band tracking, so it is usable at a crossing.
double directional_slope(const KSpaceOperator& op, std::span<const double> k, std::span<const double> direction,
                         double delta, std::size_t band);

struct BandAnalysis {
  std::size_t band = 0;
  std::vector<double> k;
  std::vector<double> gradient;
  std::vector<double> hessian_diagonal;
};

/// Gradient and pure second partials at k (the latter only at an extremum).
BandAnalysis analyze_band(const KSpaceOperator& op, std::span<const double> k, std::size_t band,
                          const DerivativeConfig& cfg = {});

}  // namespace vaqw

#endif  // VAQW_SPECTRAL_HPP
