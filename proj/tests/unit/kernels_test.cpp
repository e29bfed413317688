#include <doctest.h>

#include <cstdlib>
#include <random>
#include <stdexcept>

#include "oracles/oracles.hpp"
#include "trispin/linalg/kernels.hpp"

namespace kn = trispin::linalg::kernels;
using trispin::linalg::Complex;
using trispin::linalg::ComplexMatrix;

namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(r, c);
  for (auto& x : m.data()) x = Complex(g(rng), g(rng));
  return m;
}

// Restores the dispatch choice after a test changes it.
struct IsaGuard {
  kn::Isa saved = kn::active_isa();
  ~IsaGuard() { kn::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("scalar kernel matches the naive product") {
  std::mt19937_64 rng(7);
  for (auto [n, k, m] : {std::tuple{1, 1, 1}, {8, 8, 8}, {3, 5, 7}, {2, 9, 1}}) {
    const auto a = random_matrix(n, k, rng);
    const auto b = random_matrix(k, m, rng);
    ComplexMatrix c(n, m);
    kn::gemm_scalar(a.data().data(), b.data().data(), c.data().data(), n, k, m);
    CHECK(oracle::max_diff(c, oracle::mul(a, b)) < 1e-13);
  }
}

TEST_CASE("every available variant agrees with the scalar reference") {
  std::mt19937_64 rng(11);
  const auto isas = kn::available_isas();
  REQUIRE(isas.front() == kn::Isa::scalar);
  for (kn::Isa isa : isas) {
    CAPTURE(kn::to_string(isa));
    const kn::GemmFn fn = kn::gemm_for(isa);
    // Odd column counts exercise the tail path of the vector kernels.
    for (std::size_t m : {1u, 2u, 3u, 7u, 8u, 13u}) {
      const auto a = random_matrix(8, 6, rng);
      const auto b = random_matrix(6, m, rng);
      ComplexMatrix ref(8, m), got(8, m);
      kn::gemm_scalar(a.data().data(), b.data().data(), ref.data().data(), 8, 6, m);
      fn(a.data().data(), b.data().data(), got.data().data(), 8, 6, m);
      CHECK(oracle::max_diff(ref, got) < 1e-13);
    }
  }
}

TEST_CASE("runtime selection") {
  IsaGuard guard;
  for (kn::Isa isa : kn::available_isas()) {
    kn::set_active_isa(isa);
    CHECK(kn::active_isa() == isa);
    std::mt19937_64 rng(3);
    const auto a = random_matrix(8, 8, rng);
    const auto b = random_matrix(8, 8, rng);
    CHECK(oracle::max_diff(a * b, oracle::mul(a, b)) < 1e-13);
  }
  for (kn::Isa isa : {kn::Isa::avx2, kn::Isa::neon}) {
    if (!kn::isa_available(isa)) {
      CHECK_THROWS_AS(kn::set_active_isa(isa), std::invalid_argument);
      CHECK_THROWS_AS(kn::gemm_for(isa), std::invalid_argument);
    }
  }
  CHECK(kn::isa_available(kn::Isa::scalar));
}

TEST_CASE("environment override picks the starting variant") {
  const char* env = std::getenv("TRISPIN_KERNEL");
  if (env == nullptr) return;
  const std::string_view name(env);
  bool known = false;
  for (kn::Isa isa : kn::available_isas()) known |= name == kn::to_string(isa);
  if (known) CHECK(kn::to_string(kn::active_isa()) == name);
}
