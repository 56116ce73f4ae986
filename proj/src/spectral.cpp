#include "vaqw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace vaqw {

int grid_offset(std::size_t resolution, std::size_t i) {
  const auto n = static_cast<long>(resolution);
  return static_cast<int>(static_cast<long>(i) - (n + 1) / 2 + 1);
}

double grid_coordinate(std::size_t resolution, std::size_t i) {
  return 2.0 * kPi * grid_offset(resolution, i) / static_cast<double>(resolution);
}

std::vector<std::size_t> DispersionGrid::indices(std::size_t p) const {
  std::vector<std::size_t> idx(dimension);
  for (std::size_t a = dimension; a-- > 0;) {
    idx[a] = p % resolution;
    p /= resolution;
  }
  return idx;
}

std::size_t DispersionGrid::point(std::span<const std::size_t> idx) const {
  std::size_t p = 0;
  for (auto i : idx) p = p * resolution + i;
  return p;
}

std::vector<double> DispersionGrid::k_point(std::size_t p) const {
  std::vector<double> k;
  for (auto i : indices(p)) k.push_back(grid_coordinate(resolution, i));
  return k;
}

std::span<const double> DispersionGrid::phases_at(std::size_t p) const {
  return std::span<const double>(phases).subspan(p * bands, bands);
}

namespace {

std::string format_k(std::span<const double> k) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? ", " : "") << k[i];
  os << ')';
  return os.str();
}

std::vector<double> phases_or_report(const KSpaceOperator& op, std::span<const double> k) {
  try {
    return eigenphases(op.at(k));
  } catch (const NonUnitaryError& e) {
    throw NonUnitaryError(std::string(e.what()) + " at k = " + format_k(k), e.deviation());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string(e.what()) + " at k = " + format_k(k));
  }
}

}  // namespace

DispersionGrid dispersion_grid(const WalkSpec& w, std::size_t resolution, unsigned threads) {
  if (resolution < 2) throw std::invalid_argument("dispersion grid: resolution must be at least 2");
  const KSpaceOperator op(w);
  DispersionGrid grid;
  grid.resolution = resolution;
  grid.dimension = w.dimension();
  grid.bands = op.dim();
  std::size_t total = 1;
  for (std::size_t a = 0; a < grid.dimension; ++a) total *= resolution;
  grid.phases.assign(total * grid.bands, 0.0);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

  // Static interleaved partition; each worker writes only its own rows.
  std::vector<std::exception_ptr> errors(total);
  const auto work = [&](unsigned worker) {
    for (std::size_t p = worker; p < total; p += threads) {
      try {
        const auto phases = phases_or_report(op, grid.k_point(p));
        std::copy(phases.begin(), phases.end(), grid.phases.begin() + static_cast<long>(p * grid.bands));
      } catch (...) {
        errors[p] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return grid;
}

double phase_continuity(const DispersionGrid& grid) {
  double worst = 0.0;
  for (std::size_t p = 0; p < grid.points(); ++p) {
    auto idx = grid.indices(p);
    for (std::size_t a = 0; a < grid.dimension; ++a) {
      const std::size_t saved = idx[a];
      idx[a] = (saved + 1) % grid.resolution;
      worst = std::max(worst, multiset_deviation(grid.phases_at(p), grid.phases_at(grid.point(idx))));
      idx[a] = saved;
    }
  }
  return worst;
}

double phase_spread(const DispersionGrid& grid) {
  if (grid.phases.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(grid.phases.begin(), grid.phases.end());
  return *hi - *lo;
}

namespace {

// Gap from phases[band] to the nearest phase outside its degenerate cluster.
double cluster_gap(const std::vector<double>& phases, std::size_t band, double degeneracy) {
  double gap = std::numeric_limits<double>::infinity();
  for (double x : phases) {
    const double d = circular_distance(x, phases[band]);
    if (d > degeneracy) gap = std::min(gap, d);
  }
  return gap;
}

struct Tracker {
  const KSpaceOperator& op;
  std::vector<double> k;
  double reference;
  double gap;
  std::size_t cluster;  // multiplicity of the reference phase
  double split_tolerance;

  // Signed displacement of the tracked band at k + step * e_axis.
  double shift(std::size_t axis, double step) const {
    std::vector<double> q = k;
    q[axis] += step;
    const auto phases = phases_or_report(op, q);
    std::vector<double> near;
    for (double x : phases) {
      const double d = wrap_phase(x - reference);
      if (std::abs(d) < gap / 2.0) near.push_back(d);
    }
    if (near.size() != cluster) throw BandCrossingError("band tracking lost at k = " + format_k(q));
    const auto [lo, hi] = std::minmax_element(near.begin(), near.end());
    if (*hi - *lo > split_tolerance) {
      throw BandCrossingError("degenerate bands split at k = " + format_k(q) + " (crossing)");
    }
    return (*lo + *hi) / 2.0;
  }
};

Tracker make_tracker(const KSpaceOperator& op, std::span<const double> k, std::size_t band, double step,
                     const DerivativeConfig& cfg) {
  if (k.size() != op.dimension()) throw DimensionError("band analysis: wave vector has the wrong dimension");
  const auto phases = phases_or_report(op, k);
  if (band >= phases.size()) throw std::out_of_range("band analysis: band index out of range");
  const double gap = cluster_gap(phases, band, cfg.degeneracy_tolerance);
  if (gap <= cfg.crossing_factor * step) {
    std::ostringstream os;
    os << "band " << band << " is within " << gap << " of another band at k = " << format_k(k);
    throw BandCrossingError(os.str());
  }
  std::size_t cluster = 0;
  for (double x : phases) {
    if (circular_distance(x, phases[band]) <= cfg.degeneracy_tolerance) ++cluster;
  }
  const double split = cfg.crossing_factor * step * step + cfg.degeneracy_tolerance;
  return Tracker{op, std::vector<double>(k.begin(), k.end()), phases[band], gap, cluster, split};
}

double second_difference(const Tracker& t, std::size_t axis, double h) {
  return (t.shift(axis, h) + t.shift(axis, -h)) / (h * h);
}

}  // namespace

std::vector<double> group_velocity(const KSpaceOperator& op, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg) {
  const double h = cfg.velocity_step;
  const Tracker t = make_tracker(op, k, band, h, cfg);
  std::vector<double> v(k.size());
  for (std::size_t a = 0; a < k.size(); ++a) v[a] = (t.shift(a, h) - t.shift(a, -h)) / (2.0 * h);
  return v;
}

std::vector<double> group_velocity(const WalkSpec& w, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg) {
  return group_velocity(KSpaceOperator(w), k, band, cfg);
}

std::vector<double> band_curvature(const KSpaceOperator& op, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg) {
  const auto grad = group_velocity(op, k, band, cfg);
  double norm = 0.0;
  for (double g : grad) norm = std::max(norm, std::abs(g));
  if (norm > cfg.extremum_gradient_tolerance) {
    std::ostringstream os;
    os << "band curvature: k = " << format_k(k) << " is not an extremum of band " << band << " (gradient " << norm
       << ")";
    throw std::domain_error(os.str());
  }
  const double h = cfg.curvature_step;
  const Tracker t = make_tracker(op, k, band, h, cfg);
  std::vector<double> out(k.size());
  for (std::size_t a = 0; a < k.size(); ++a) {
    const double coarse = second_difference(t, a, h);
    out[a] = cfg.richardson ? (4.0 * second_difference(t, a, h / 2.0) - coarse) / 3.0 : coarse;
  }
  return out;
}

std::vector<double> band_curvature(const WalkSpec& w, std::span<const double> k, std::size_t band,
                                   const DerivativeConfig& cfg) {
  return band_curvature(KSpaceOperator(w), k, band, cfg);
}

double directional_slope(const KSpaceOperator& op, std::span<const double> k, std::span<const double> direction,
                         double delta, std::size_t band) {
  if (k.size() != direction.size()) throw DimensionError("directional slope: direction has the wrong dimension");
  std::vector<double> q(k.begin(), k.end());
  for (std::size_t a = 0; a < q.size(); ++a) q[a] += delta * direction[a];
  const auto base = phases_or_report(op, k);
  const auto moved = phases_or_report(op, q);
  if (band >= base.size()) throw std::out_of_range("directional slope: band index out of range");
  return wrap_phase(moved[band] - base[band]) / delta;
}

BandAnalysis analyze_band(const KSpaceOperator& op, std::span<const double> k, std::size_t band,
                          const DerivativeConfig& cfg) {
  BandAnalysis out;
  out.band = band;
  out.k.assign(k.begin(), k.end());
  out.gradient = group_velocity(op, k, band, cfg);
  double norm = 0.0;
  for (double g : out.gradient) norm = std::max(norm, std::abs(g));
  if (norm <= cfg.extremum_gradient_tolerance) out.hessian_diagonal = band_curvature(op, k, band, cfg);
  return out;
}

}  // namespace vaqw
