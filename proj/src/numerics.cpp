#include "vaqw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace vaqw {

namespace {

std::string shape(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  m_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ComplexMatrix: ragged initializer");
    std::size_t j = 0;
    for (const auto& x : row) (*this)(i, j++) = x;
    ++i;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix d(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  return d;
}

Complex ComplexMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows() || j >= cols()) throw DimensionError("ComplexMatrix::at: index out of range");
  return (*this)(i, j);
}

double ComplexMatrix::max_abs() const {
  return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

void ComplexMatrix::set_block(std::size_t row, std::size_t col, const ComplexMatrix& block) {
  if (row + block.rows() > rows() || col + block.cols() > cols()) {
    throw DimensionError("set_block: block does not fit");
  }
  m_.block(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), block.m_.rows(), block.m_.cols()) = block.m_;
}

void ComplexMatrix::add_block(std::size_t row, std::size_t col, const ComplexMatrix& block, Complex weight) {
  if (row + block.rows() > rows() || col + block.cols() > cols()) {
    throw DimensionError("add_block: block does not fit");
  }
  m_.block(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), block.m_.rows(), block.m_.cols()) +=
      weight * block.m_;
}

ComplexMatrix ComplexMatrix::block(std::size_t row, std::size_t col, std::size_t r, std::size_t c) const {
  if (row + r > rows() || col + c > cols()) throw DimensionError("block: out of range");
  return ComplexMatrix(Eigen::MatrixXcd(m_.block(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col),
                                                 static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "add");
  m_ += rhs.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "subtract");
  m_ -= rhs.m_;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionError("matmul: inner dimensions differ " + shape(lhs) + " * " + shape(rhs));
  }
  return ComplexMatrix(Eigen::MatrixXcd(lhs.m_ * rhs.m_));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) { return a + b; }
ComplexMatrix scale(const ComplexMatrix& a, Complex s) { return s * a; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out.add_block(i * b.rows(), j * b.cols(), b, a(i, j));
    }
  }
  return out;
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Eigen::MatrixXcd gram = m.eigen().adjoint() * m.eigen();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("operator_norm: eigensolve of M^dagger M failed");
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

double unitarity_deviation(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitarity_deviation: matrix is not square");
  return operator_norm(u.adjoint() * u - ComplexMatrix::identity(u.rows()));
}

double wrap_phase(double omega) {
  double w = std::remainder(omega, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double circular_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

namespace {

double residual_of(const Eigen::MatrixXcd& u, const Eigen::VectorXcd& v, Complex lambda) {
  return (u * v - lambda * v).norm() / v.norm();
}

}  // namespace

EigenDecomposition eigendecompose(const ComplexMatrix& u, const EigenphaseOptions& options) {
  if (!u.is_square()) throw DimensionError("eigenphases: matrix is not square");
  const std::size_t n = u.rows();
  EigenDecomposition out;
  if (n == 0) return out;

  const double dev = unitarity_deviation(u);
  if (!(dev <= options.unitarity_tolerance)) {
    std::ostringstream os;
    os << "eigenphases: input is not unitary (|U^dagger U - I| = " << dev << ")";
    throw NonUnitaryError(os.str(), dev);
  }

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(static_cast<Eigen::Index>(n));
  schur.setMaxIterations(static_cast<Eigen::Index>(options.max_iterations_per_row) * static_cast<Eigen::Index>(n));
  schur.compute(u.eigen(), true);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceError("eigenphases: Schur iteration did not converge within the iteration cap");
  }

  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::VectorXcd lambda = t.diagonal();
  Eigen::MatrixXcd vecs = schur.matrixU();

  // Normal input: Schur vectors are eigenvectors. Near-unitary input can leave
  // small off-diagonal mass in T; fall back to the triangular back-solve then.
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    worst = std::max(worst, residual_of(u.eigen(), vecs.col(ri), lambda(ri)));
  }
  if (worst > options.residual_tolerance) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u.eigen(), true);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigenphases: eigenvector solve did not converge");
    lambda = es.eigenvalues();
    vecs = es.eigenvectors();
    worst = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const auto ri = static_cast<Eigen::Index>(r);
      vecs.col(ri).normalize();
      worst = std::max(worst, residual_of(u.eigen(), vecs.col(ri), lambda(ri)));
    }
    if (worst > options.residual_tolerance) {
      std::ostringstream os;
      os << "eigenphases: eigenpair residual " << worst << " exceeds " << options.residual_tolerance;
      throw ConvergenceError(os.str());
    }
  }

  std::vector<double> phases(n);
  for (std::size_t r = 0; r < n; ++r) phases[r] = wrap_phase(-std::arg(lambda(static_cast<Eigen::Index>(r))));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return phases[a] < phases[b]; });

  out.phases.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    out.phases[r] = phases[order[r]];
    out.vectors.eigen().col(static_cast<Eigen::Index>(r)) = vecs.col(static_cast<Eigen::Index>(order[r]));
  }
  out.max_residual = worst;
  return out;
}

std::vector<double> eigenphases(const ComplexMatrix& u, const EigenphaseOptions& options) {
  return eigendecompose(u, options).phases;
}

double multiset_deviation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  for (auto& v : x) v = wrap_phase(v);
  for (auto& v : y) v = wrap_phase(v);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  // The bottleneck matching of two point sets on a circle is a cyclic shift
  // of their sorted orders.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < n; ++shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n && worst < best; ++i) {
      worst = std::max(worst, circular_distance(x[i], y[(i + shift) % n]));
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace vaqw
