#include <arm_neon.h>

#include "trispin/linalg/kernels.hpp"

namespace trispin::linalg::kernels {

void gemm_neon(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k,
               std::size_t m) {
  // One float64x2_t holds one complex double (re, im).
  auto* cd = reinterpret_cast<double*>(c);
  const auto* bd = reinterpret_cast<const double*>(b);
  const float64x2_t sign = {-1.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = cd + 2 * i * m;
    for (std::size_t j = 0; j < m; ++j) vst1q_f64(crow + 2 * j, vdupq_n_f64(0.0));
    for (std::size_t l = 0; l < k; ++l) {
      const Complex av = a[i * k + l];
      const float64x2_t ar = vdupq_n_f64(av.real());
      const float64x2_t ai = vmulq_f64(vdupq_n_f64(av.imag()), sign);
      const double* brow = bd + 2 * l * m;
      for (std::size_t j = 0; j < m; ++j) {
        const float64x2_t bv = vld1q_f64(brow + 2 * j);
        const float64x2_t bswap = vextq_f64(bv, bv, 1);
        float64x2_t acc = vld1q_f64(crow + 2 * j);
        acc = vfmaq_f64(acc, ar, bv);
        acc = vfmaq_f64(acc, ai, bswap);
        vst1q_f64(crow + 2 * j, acc);
      }
    }
  }
}

}  // namespace trispin::linalg::kernels
