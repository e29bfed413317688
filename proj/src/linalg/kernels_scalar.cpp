#include "trispin/linalg/kernels.hpp"

namespace trispin::linalg::kernels {

void gemm_scalar(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k,
                 std::size_t m) {
  for (std::size_t i = 0; i < n * m; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex* crow = c + i * m;
    for (std::size_t l = 0; l < k; ++l) {
      const double ar = a[i * k + l].real();
      const double ai = a[i * k + l].imag();
      const Complex* brow = b + l * m;
      for (std::size_t j = 0; j < m; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] += Complex(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
}

}  // namespace trispin::linalg::kernels
