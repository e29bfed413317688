// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "trispin/linalg/kernels.hpp"

namespace trispin::linalg::kernels {

void gemm_avx2(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k,
               std::size_t m) {
  // One __m256d holds two complex doubles laid out (re0, im0, re1, im1).
  const std::size_t m2 = m & ~std::size_t{1};
  auto* cd = reinterpret_cast<double*>(c);
  const auto* bd = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = cd + 2 * i * m;
    for (std::size_t j = 0; j < m2; j += 2) _mm256_storeu_pd(crow + 2 * j, _mm256_setzero_pd());
    if (m2 != m) {
      crow[2 * m2] = 0.0;
      crow[2 * m2 + 1] = 0.0;
    }
    for (std::size_t l = 0; l < k; ++l) {
      const Complex av = a[i * k + l];
      const __m256d ar = _mm256_set1_pd(av.real());
      const __m256d ai = _mm256_set1_pd(av.imag());
      const double* brow = bd + 2 * l * m;
      for (std::size_t j = 0; j < m2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d bswap = _mm256_permute_pd(bv, 0b0101);
        // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
        const __m256d prod = _mm256_fmaddsub_pd(ar, bv, _mm256_mul_pd(ai, bswap));
        _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(_mm256_loadu_pd(crow + 2 * j), prod));
      }
      if (m2 != m) {
        const double br = brow[2 * m2];
        const double bi = brow[2 * m2 + 1];
        crow[2 * m2] += av.real() * br - av.imag() * bi;
        crow[2 * m2 + 1] += av.real() * bi + av.imag() * br;
      }
    }
  }
}

}  // namespace trispin::linalg::kernels
