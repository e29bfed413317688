#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "trispin/linalg/complex_matrix.hpp"

namespace trispin::linalg {

/// Absolute tolerance on max |H - H^dagger| accepted by the Hermitian routines.
inline constexpr double kHermitianTolerance = 1e-10;

class NotHermitianError : public std::invalid_argument {
 public:
  explicit NotHermitianError(double asymmetry);
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

HermitianEigen eigh(const ComplexMatrix& h);

/// exp(-i h t) for Hermitian h (rad/s) and time t (s).
ComplexMatrix expm_generator(const ComplexMatrix& h, double t);

}  // namespace trispin::linalg
