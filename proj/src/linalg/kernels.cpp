#include "trispin/linalg/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace trispin::linalg::kernels {

namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(TRISPIN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(TRISPIN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() noexcept {
  if (cpu_supports(Isa::avx2)) return Isa::avx2;
  if (cpu_supports(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("TRISPIN_KERNEL")) {
    const std::string_view name(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (name == to_string(isa) && cpu_supports(isa)) return isa;
    }
  }
  return best_isa();
}

GemmFn resolve(Isa isa) noexcept {
  switch (isa) {
#if defined(TRISPIN_HAVE_AVX2)
    case Isa::avx2:
      return &gemm_avx2;
#endif
#if defined(TRISPIN_HAVE_NEON)
    case Isa::neon:
      return &gemm_neon;
#endif
    default:
      return &gemm_scalar;
  }
}

struct ActiveKernel {
  std::atomic<Isa> isa{initial_isa()};
  std::atomic<GemmFn> gemm{resolve(isa.load())};
};

ActiveKernel& active() {
  static ActiveKernel k;
  return k;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept { return cpu_supports(isa); }

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

GemmFn gemm_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument("kernel variant not available: " + std::string(to_string(isa)));
  }
  return resolve(isa);
}

Isa active_isa() noexcept { return active().isa.load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument("kernel variant not available: " + std::string(to_string(isa)));
  }
  active().isa.store(isa, std::memory_order_relaxed);
  active().gemm.store(resolve(isa), std::memory_order_relaxed);
}

void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k, std::size_t m) {
  active().gemm.load(std::memory_order_relaxed)(a, b, c, n, k, m);
}

}  // namespace trispin::linalg::kernels
