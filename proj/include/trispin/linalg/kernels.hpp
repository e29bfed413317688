#pragma once

// Complex GEMM kernels. A scalar reference implementation is always built;
// AVX2+FMA (x86-64) and NEON (aarch64) variants are compiled when the target
// supports them and selected at runtime. TRISPIN_KERNEL=scalar|avx2|neon in
// the environment overrides the automatic choice.

#include <cstddef>
#include <string_view>
#include <vector>

#include "trispin/linalg/complex_matrix.hpp"

namespace trispin::linalg::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// c[n x m] = a[n x k] * b[k x m], all row-major, c does not alias a or b.
using GemmFn = void (*)(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k,
                        std::size_t m);

void gemm_scalar(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k,
                 std::size_t m);
#if defined(TRISPIN_HAVE_AVX2)
void gemm_avx2(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k,
               std::size_t m);
#endif
#if defined(TRISPIN_HAVE_NEON)
void gemm_neon(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k,
               std::size_t m);
#endif

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Every variant usable on this machine, scalar first.
std::vector<Isa> available_isas();

GemmFn gemm_for(Isa isa);

Isa active_isa() noexcept;

/// Throws std::invalid_argument if the variant is unavailable.
void set_active_isa(Isa isa);

void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t n, std::size_t k, std::size_t m);

}  // namespace trispin::linalg::kernels
