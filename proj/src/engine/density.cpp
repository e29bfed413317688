#include "trispin/engine/density.hpp"

#include <stdexcept>

#include "trispin/linalg/expm.hpp"
#include "trispin/spin/operators.hpp"

namespace trispin::engine {

DensityOperator::DensityOperator(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != spin::kDim || rho_.cols() != spin::kDim) {
    throw std::invalid_argument("density operator must be 8x8");
  }
  const double dev = linalg::hermitian_deviation(rho_);
  if (dev > linalg::kHermitianTolerance) throw linalg::NotHermitianError(dev);
}

double DensityOperator::trace() const { return rho_.trace().real(); }

double DensityOperator::project(const ComplexMatrix& op) const { return linalg::inner_product(rho_, op).real(); }

DensityOperator DensityOperator::transformed(const ComplexMatrix& u) const {
  ComplexMatrix out = u * rho_ * u.adjoint();
  // Symmetrize away round-off so chained evolutions stay within the Hermitian tolerance.
  ComplexMatrix herm = out + out.adjoint();
  herm *= 0.5;
  return DensityOperator(std::move(herm));
}

}  // namespace trispin::engine
