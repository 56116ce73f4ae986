#include "vaqw/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vaqw/coarse_grain.hpp"
#include "vaqw/spectral.hpp"

namespace vaqw {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::int64_t reduce(std::int64_t x, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  return ((x % nn) + nn) % nn;
}

void check_shape(const WalkSpec& w, const LatticeState& psi) {
  if (psi.dimension != w.dimension() || psi.index != w.index() || psi.coin_dim != w.coin_dim()) {
    throw DimensionError("lattice state does not match the walk's dimension, index or coin");
  }
  if (psi.amplitudes.size() != psi.sites() * psi.fiber()) throw DimensionError("lattice state has the wrong size");
}

// In-place DFT along every axis: x_m <- sum_v e^{sign i 2 pi m v / N} x_v.
// Momentum index i on an axis stands for m = grid_offset(N, i).
void dft(std::vector<Complex>& data, std::size_t n, std::size_t d, std::size_t fiber, double sign, bool to_momentum) {
  std::vector<Complex> twiddle(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = grid_offset(n, i);
    for (std::size_t v = 0; v < n; ++v) {
      twiddle[i * n + v] = std::polar(1.0, sign * 2.0 * kPi * m * static_cast<double>(v) / static_cast<double>(n));
    }
  }
  const std::size_t total = ipow(n, d);
  std::vector<Complex> line(n * fiber);
  std::vector<Complex> out(n * fiber);
  for (std::size_t axis = 0; axis < d; ++axis) {
    const std::size_t stride = ipow(n, d - 1 - axis);
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride) % n != 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(data.begin() + static_cast<long>((base + i * stride) * fiber), fiber,
                    line.begin() + static_cast<long>(i * fiber));
      }
      std::fill(out.begin(), out.end(), Complex{});
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t v = 0; v < n; ++v) {
          const Complex tw = to_momentum ? twiddle[i * n + v] : twiddle[v * n + i];
          for (std::size_t f = 0; f < fiber; ++f) out[i * fiber + f] += tw * line[v * fiber + f];
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(out.begin() + static_cast<long>(i * fiber), fiber,
                    data.begin() + static_cast<long>((base + i * stride) * fiber));
      }
    }
  }
}

}  // namespace

LatticeState LatticeState::zeros(std::size_t torus, std::size_t dimension, std::size_t index, std::size_t coin_dim) {
  if (torus == 0) throw std::invalid_argument("lattice state: torus size must be positive");
  LatticeState s;
  s.torus = torus;
  s.dimension = dimension;
  s.index = index;
  s.coin_dim = coin_dim;
  s.amplitudes.assign(s.sites() * s.fiber(), Complex{});
  return s;
}

LatticeState LatticeState::zeros_like(const WalkSpec& w, std::size_t torus) {
  return zeros(torus, w.dimension(), w.index(), w.coin_dim());
}

LatticeState LatticeState::delta(const WalkSpec& w, std::size_t torus, std::span<const std::int64_t> site,
                                 std::size_t coset, std::size_t coin) {
  LatticeState s = zeros_like(w, torus);
  if (coset >= s.index || coin >= s.coin_dim) throw std::out_of_range("delta state: coset or coin out of range");
  s.at(s.site_index(site), coset, coin) = 1.0;
  return s;
}

LatticeState LatticeState::plane_wave(const WalkSpec& w, std::size_t torus, std::span<const std::int64_t> m,
                                      std::span<const Complex> fiber_vector) {
  LatticeState s = zeros_like(w, torus);
  if (m.size() != s.dimension) throw DimensionError("plane wave: momentum index has the wrong dimension");
  if (fiber_vector.size() != s.fiber()) throw DimensionError("plane wave: fiber vector has the wrong size");
  const double scale = 1.0 / std::sqrt(static_cast<double>(s.sites()));
  for (std::size_t site = 0; site < s.sites(); ++site) {
    const auto v = s.site_coordinates(site);
    double phase = 0.0;
    for (std::size_t a = 0; a < s.dimension; ++a) {
      phase += 2.0 * kPi * static_cast<double>(m[a] * v[a]) / static_cast<double>(torus);
    }
    const Complex f = std::polar(scale, -phase);
    for (std::size_t c = 0; c < s.fiber(); ++c) s.amplitudes[site * s.fiber() + c] = f * fiber_vector[c];
  }
  return s;
}

std::size_t LatticeState::sites() const noexcept { return ipow(torus, dimension); }

std::vector<std::int64_t> LatticeState::site_coordinates(std::size_t site) const {
  std::vector<std::int64_t> v(dimension);
  for (std::size_t a = dimension; a-- > 0;) {
    v[a] = static_cast<std::int64_t>(site % torus);
    site /= torus;
  }
  return v;
}

std::size_t LatticeState::site_index(std::span<const std::int64_t> coordinates) const {
  if (coordinates.size() != dimension) throw DimensionError("lattice state: site has the wrong dimension");
  std::size_t s = 0;
  for (auto x : coordinates) s = s * torus + static_cast<std::size_t>(reduce(x, torus));
  return s;
}

void check_torus(const WalkSpec& w, const LatticeState& psi) {
  check_shape(w, psi);
  const std::int64_t reach = w.tiling().max_shift();
  if (static_cast<std::int64_t>(psi.torus) < 2 * reach + 1) {
    throw TorusTooSmallError("torus of size " + std::to_string(psi.torus) + " is too small: displacements up to " +
                             std::to_string(reach) + " need at least " + std::to_string(2 * reach + 1));
  }
}

LatticeState step(const WalkSpec& w, const LatticeState& psi) {
  check_torus(w, psi);
  const auto& t = w.tiling();
  const std::size_t s = psi.coin_dim;
  LatticeState out = LatticeState::zeros(psi.torus, psi.dimension, psi.index, s);
  std::vector<std::int64_t> target(psi.dimension);
  for (std::size_t site = 0; site < psi.sites(); ++site) {
    const auto v = psi.site_coordinates(site);
    for (std::size_t j = 0; j < psi.index; ++j) {
      const Complex* in = &psi.amplitudes[(site * psi.index + j) * s];
      if (std::all_of(in, in + s, [](Complex z) { return z == Complex{}; })) continue;
      for (auto g : w.alphabet().all()) {
        const auto& e = t.entry(g, j);
        for (std::size_t a = 0; a < psi.dimension; ++a) target[a] = v[a] - e.shift[a];
        Complex* dst = &out.amplitudes[(out.site_index(target) * psi.index + e.target) * s];
        const ComplexMatrix& m = w.matrix(g);
        for (std::size_t r = 0; r < s; ++r) {
          Complex acc{};
          for (std::size_t c = 0; c < s; ++c) acc += m(r, c) * in[c];
          dst[r] += acc;
        }
      }
    }
  }
  return out;
}

LatticeState evolve_steps(const WalkSpec& w, LatticeState psi, std::size_t steps) {
  check_torus(w, psi);
  for (std::size_t i = 0; i < steps; ++i) psi = step(w, psi);
  return psi;
}

LatticeState evolve_fourier(const WalkSpec& w, const LatticeState& psi, std::size_t steps) {
  check_torus(w, psi);
  const std::size_t n = psi.torus;
  const std::size_t d = psi.dimension;
  const std::size_t f = psi.fiber();
  std::vector<Complex> data = psi.amplitudes;
  dft(data, n, d, f, +1.0, true);
  const double scale = 1.0 / static_cast<double>(psi.sites());
  for (auto& z : data) z *= scale;

  const KSpaceOperator op(w);
  std::vector<double> k(d);
  Eigen::VectorXcd fiber(static_cast<Eigen::Index>(f));
  for (std::size_t p = 0; p < psi.sites(); ++p) {
    std::size_t rest = p;
    for (std::size_t a = d; a-- > 0;) {
      k[a] = grid_coordinate(n, rest % n);
      rest /= n;
    }
    const Eigen::MatrixXcd ak = op.at(k).eigen();
    for (std::size_t c = 0; c < f; ++c) fiber(static_cast<Eigen::Index>(c)) = data[p * f + c];
    for (std::size_t i = 0; i < steps; ++i) fiber = ak * fiber;
    for (std::size_t c = 0; c < f; ++c) data[p * f + c] = fiber(static_cast<Eigen::Index>(c));
  }

  dft(data, n, d, f, -1.0, false);
  LatticeState out = psi;
  out.amplitudes = std::move(data);
  return out;
}

double norm(const LatticeState& psi) {
  double sum = 0.0;
  for (auto z : psi.amplitudes) sum += std::norm(z);
  return std::sqrt(sum);
}

std::vector<double> probability_map(const LatticeState& psi) {
  std::vector<double> out(psi.sites() * psi.index, 0.0);
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    for (std::size_t c = 0; c < psi.coin_dim; ++c) out[cell] += std::norm(psi.amplitudes[cell * psi.coin_dim + c]);
  }
  return out;
}

double max_abs_difference(const LatticeState& a, const LatticeState& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) throw DimensionError("lattice states differ in size");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  return worst;
}

std::int64_t support_radius(const LatticeState& psi, double threshold) {
  std::int64_t radius = 0;
  const auto n = static_cast<std::int64_t>(psi.torus);
  for (std::size_t site = 0; site < psi.sites(); ++site) {
    bool occupied = false;
    for (std::size_t c = 0; c < psi.fiber(); ++c) {
      if (std::abs(psi.amplitudes[site * psi.fiber() + c]) > threshold) occupied = true;
    }
    if (!occupied) continue;
    for (auto x : psi.site_coordinates(site)) radius = std::max(radius, std::min(x, n - x));
  }
  return radius;
}

void write_probability_csv(std::ostream& out, const LatticeState& psi) {
  for (std::size_t a = 0; a < psi.dimension; ++a) out << "x_" << a + 1 << ',';
  out << "coset,probability\n";
  const auto p = probability_map(psi);
  const auto old = out.precision(17);
  for (std::size_t site = 0; site < psi.sites(); ++site) {
    const auto v = psi.site_coordinates(site);
    for (std::size_t j = 0; j < psi.index; ++j) {
      for (auto x : v) out << x << ',';
      out << j << ',' << p[site * psi.index + j] << '\n';
    }
  }
  out.precision(old);
}

}  // namespace vaqw
