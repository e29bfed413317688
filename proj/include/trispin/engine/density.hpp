#pragma once

#include "trispin/linalg/complex_matrix.hpp"

namespace trispin::engine {

using linalg::ComplexMatrix;

/// 8x8 Hermitian density operator in product-operator normalization (e.g. I1x, 2 I1x I2z).
class DensityOperator {
 public:
  /// Throws linalg::NotHermitianError when max |rho - rho^dagger| exceeds the Hermitian tolerance,
  /// std::invalid_argument for a shape other than 8x8.
  explicit DensityOperator(ComplexMatrix rho);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  double trace() const;

  /// Tr(rho^dagger op), real part; the expectation-value style projection onto op.
  double project(const ComplexMatrix& op) const;

  /// U rho U^dagger.
  DensityOperator transformed(const ComplexMatrix& u) const;

 private:
  ComplexMatrix rho_;
};

}  // namespace trispin::engine
