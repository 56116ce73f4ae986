// Dense complex matrices and eigenphase extraction for small unitaries.
#ifndef VAQW_NUMERICS_HPP
#define VAQW_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vaqw {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Thrown on non-conforming operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input to an eigenphase routine that is not unitary within tolerance.
class NonUnitaryError : public std::runtime_error {
 public:
  NonUnitaryError(const std::string& what, double deviation)
      : std::runtime_error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// The eigensolver hit its iteration cap or missed the residual contract.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major view over an Eigen dense complex matrix with checked arithmetic.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);
  explicit ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  Complex& operator()(std::size_t i, std::size_t j) { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }

  /// Checked element access.
  Complex at(std::size_t i, std::size_t j) const;

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint()); }
  ComplexMatrix transpose() const { return ComplexMatrix(m_.transpose()); }
  ComplexMatrix conjugate() const { return ComplexMatrix(m_.conjugate()); }

  double frobenius_norm() const { return m_.norm(); }
  double max_abs() const;
  bool is_zero() const { return m_.isZero(0.0); }

  /// Copies an s x s block into place at (row, col).
  void set_block(std::size_t row, std::size_t col, const ComplexMatrix& block);
  void add_block(std::size_t row, std::size_t col, const ComplexMatrix& block, Complex weight = 1.0);
  ComplexMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;

  const Eigen::MatrixXcd& eigen() const noexcept { return m_; }
  Eigen::MatrixXcd& eigen() noexcept { return m_; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s) {
    m_ *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXcd m_;
};

// Named forms of the arithmetic, mirroring the operators.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex s);
inline ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Largest singular value, from the largest eigenvalue of M†M.
double operator_norm(const ComplexMatrix& m);

/// Operator norm of U†U - I.
double unitarity_deviation(const ComplexMatrix& u);

/// Maps any angle into (-pi, pi].
double wrap_phase(double omega);

/// Distance on the circle, in [0, pi].
double circular_distance(double a, double b);

struct EigenphaseOptions {
  double unitarity_tolerance = 1e-8;
  double residual_tolerance = 1e-10;
  int max_iterations_per_row = 60;
};

/// Eigenphases with the matching (orthonormal) eigenvectors as columns.
/// Eigenvalues are written e^{-i omega}, omega in (-pi, pi].
struct EigenDecomposition {
  std::vector<double> phases;  // ascending
  ComplexMatrix vectors;       // column r belongs to phases[r]
  double max_residual = 0.0;   // max_r |U v_r - e^{-i omega_r} v_r|
};

EigenDecomposition eigendecompose(const ComplexMatrix& u, const EigenphaseOptions& options = {});

/// Sorted eigenphases of a unitary matrix (multiplicities repeated).
std::vector<double> eigenphases(const ComplexMatrix& u, const EigenphaseOptions& options = {});

/// Largest per-pair circular distance of the best cyclic matching of two
/// phase multisets; +inf when sizes differ.
double multiset_deviation(std::span<const double> a, std::span<const double> b);

inline bool multisets_equal(std::span<const double> a, std::span<const double> b, double tolerance) {
  return multiset_deviation(a, b) <= tolerance;
}

}  // namespace vaqw

#endif  // VAQW_NUMERICS_HPP
