#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "trispin/linalg/expm.hpp"

namespace la = trispin::linalg;
using la::Complex;
using la::ComplexMatrix;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g;
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = scale * g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = scale * Complex(g(rng), g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

}  // namespace

TEST_CASE("eigh reconstructs the matrix with ascending eigenvalues") {
  std::mt19937_64 rng(1);
  const auto h = random_hermitian(8, rng, 1.0);
  const auto eig = la::eigh(h);
  REQUIRE(eig.values.size() == 8);
  for (std::size_t i = 1; i < 8; ++i) CHECK(eig.values[i - 1] <= eig.values[i]);
  ComplexMatrix d(8, 8);
  for (std::size_t i = 0; i < 8; ++i) d(i, i) = eig.values[i];
  CHECK(la::max_abs_diff(eig.vectors * d * eig.vectors.adjoint(), h) < 1e-12);
}

TEST_CASE("expm_generator agrees with the Taylor oracle") {
  std::mt19937_64 rng(2);
  for (double scale : {1e-3, 1.0, 50.0}) {
    const auto h = random_hermitian(8, rng, scale);
    for (double t : {0.0, 1e-3, 0.37}) {
      CAPTURE(scale);
      CAPTURE(t);
      const auto u = la::expm_generator(h, t);
      CHECK(la::max_abs_diff(u, oracle::propagate(h, t)) < 1e-10);
      CHECK(la::unitarity_deviation(u) < 1e-12);
    }
  }
}

TEST_CASE("diagonal generators take the exact path") {
  const Complex d[] = {1.0, -2.0, 0.5, 3.0};
  const auto u = la::expm_generator(ComplexMatrix::diagonal(d), 0.25);
  CHECK(la::is_diagonal(u));
  CHECK(std::abs(u(1, 1) - std::polar(1.0, 0.5)) < 1e-15);
}

TEST_CASE("non-Hermitian input is rejected with its asymmetry") {
  ComplexMatrix h(2, 2, {0.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(la::eigh(h), la::NotHermitianError);
  try {
    la::expm_generator(h, 1.0);
    FAIL("expected NotHermitianError");
  } catch (const la::NotHermitianError& e) {
    CHECK(e.asymmetry() == doctest::Approx(1.0));
  }
  ComplexMatrix tiny(2, 2, {0.0, 1e-12, 0.0, 0.0});
  CHECK_NOTHROW(la::eigh(tiny));
}
