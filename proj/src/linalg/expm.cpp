#include "trispin/linalg/expm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

namespace trispin::linalg {

namespace {

std::string asymmetry_message(double asymmetry) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "matrix is not Hermitian: max |H - H^dagger| = %.3e (tolerance %.1e)",
                asymmetry, kHermitianTolerance);
  return buf;
}

void require_hermitian(const ComplexMatrix& h) {
  if (!h.is_square()) throw std::invalid_argument("Hermitian routine: matrix is not square");
  const double dev = hermitian_deviation(h);
  if (!(dev <= kHermitianTolerance)) throw NotHermitianError(dev);
}

}  // namespace

NotHermitianError::NotHermitianError(double asymmetry)
    : std::invalid_argument(asymmetry_message(asymmetry)), asymmetry_(asymmetry) {}

HermitianEigen eigh(const ComplexMatrix& h) {
  require_hermitian(h);
  const auto n = static_cast<Eigen::Index>(h.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = h(r, c);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolver did not converge");

  HermitianEigen out;
  out.values.resize(h.rows());
  out.vectors = ComplexMatrix(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < n; ++i) out.values[i] = solver.eigenvalues()(i);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out.vectors(r, c) = solver.eigenvectors()(r, c);
  }
  return out;
}

ComplexMatrix expm_generator(const ComplexMatrix& h, double t) {
  require_hermitian(h);
  const std::size_t n = h.rows();
  if (is_diagonal(h)) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = std::polar(1.0, -h(i, i).real() * t);
    return out;
  }
  const HermitianEigen eig = eigh(h);
  // V diag(exp(-i lambda t)) V^dagger
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const Complex phase = std::polar(1.0, -eig.values[c] * t);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= phase;
  }
  return scaled * eig.vectors.adjoint();
}

}  // namespace trispin::linalg
