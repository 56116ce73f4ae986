// Test-only reference computations that share no code with the library.
#ifndef VAQW_TESTS_ORACLES_HPP
#define VAQW_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "vaqw/numerics.hpp"

namespace oracle {

using C = std::complex<double>;
using Dense = std::vector<std::vector<C>>;

inline Dense dense(const vaqw::ComplexMatrix& m) {
  Dense out(m.rows(), std::vector<C>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

/// Gaussian elimination with partial pivoting.
inline C determinant(Dense a) {
  const std::size_t n = a.size();
  C det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const C f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// |det(U - e^{-i omega} I)| relative to the scale of U.
inline double characteristic_residual(const vaqw::ComplexMatrix& u, double omega) {
  Dense a = dense(u);
  const C lambda = std::polar(1.0, -omega);
  for (std::size_t i = 0; i < a.size(); ++i) a[i][i] -= lambda;
  return std::abs(determinant(std::move(a)));
}

/// Random unitary from QR of a Gaussian matrix (modified Gram-Schmidt).
inline vaqw::ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<std::vector<C>> cols(n, std::vector<C>(n));
  for (auto& col : cols)
    for (auto& x : col) x = C(g(rng), g(rng));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      C dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(cols[i][r]) * cols[j][r];
      for (std::size_t r = 0; r < n; ++r) cols[j][r] -= dot * cols[i][r];
    }
    double nrm = 0.0;
    for (auto x : cols[j]) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (auto& x : cols[j]) x /= nrm;
  }
  vaqw::ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r) u(r, j) = cols[j][r];
  return u;
}

}  // namespace oracle

#endif  // VAQW_TESTS_ORACLES_HPP
