#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oracles/oracles.hpp"
#include "trispin/spin/operators.hpp"

namespace sp = trispin::spin;
namespace la = trispin::linalg;
using la::Complex;
using sp::Axis;
using sp::SpinSet;

TEST_CASE("SpinSet membership and text form") {
  const SpinSet s{1, 3};
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(2));
  CHECK(s.count() == 2);
  CHECK(s.members() == std::vector<int>{1, 3});
  CHECK(s.to_string() == "1,3");
  CHECK(SpinSet::parse("3,1") == s);
  CHECK(s.with(2) == SpinSet::all());
  CHECK(SpinSet::from_bits(0b101) == s);
  CHECK(SpinSet{}.empty());
  CHECK_THROWS_AS(SpinSet::parse("4"), std::out_of_range);
  CHECK_THROWS_AS(SpinSet::parse("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(SpinSet::parse(""), std::invalid_argument);
  CHECK_THROWS_AS((SpinSet{0}), std::out_of_range);
}

TEST_CASE("spin systems") {
  const auto chain = sp::SpinSystem::ideal_chain(88.0);
  CHECK(chain.j12 == 88.0);
  CHECK(chain.j13 == 0.0);
  const auto ac = sp::SpinSystem::acetamide();
  CHECK(ac.offset(3) - ac.offset(1) == doctest::Approx(358.0));
  CHECK(ac.channel(2) == sp::Channel::heteronucleus);
  CHECK(ac.spins_on(sp::Channel::proton) == SpinSet{1, 3});
  auto bad = chain;
  bad.j23 = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("spin operators match the index construction") {
  for (int k = 1; k <= 3; ++k) {
    CHECK(la::max_abs_diff(sp::spin_operator(k, Axis::x), oracle::spin_op(k, 'x')) == 0.0);
    CHECK(la::max_abs_diff(sp::spin_operator(k, Axis::y), oracle::spin_op(k, 'y')) == 0.0);
    CHECK(la::max_abs_diff(sp::spin_operator(k, Axis::z), oracle::spin_op(k, 'z')) == 0.0);
  }
  CHECK_THROWS_AS(sp::spin_operator(4, Axis::x), std::out_of_range);
  // Tr(I1x I1x) = 2 in the 8-dimensional space.
  CHECK(la::inner_product(sp::spin_operator(1, Axis::x), sp::spin_operator(1, Axis::x)).real() == doctest::Approx(2.0));
}

TEST_CASE("product operators carry the 2^(n-1) factor") {
  const auto p = sp::product_operator({{1, Axis::x}, {2, Axis::z}});
  const auto ref = oracle::scaled(oracle::mul(oracle::spin_op(1, 'x'), oracle::spin_op(2, 'z')), 2.0);
  CHECK(la::max_abs_diff(p, ref) < 1e-15);
  CHECK(la::max_abs_diff(sp::product_operator({{3, Axis::y}}), oracle::spin_op(3, 'y')) < 1e-15);
}

TEST_CASE("free Hamiltonian matches the operator sum") {
  sp::SpinSystem s;
  s.j12 = 88.8;
  s.j23 = 87.3;
  s.j13 = 2.9;
  s.offsets = {120.0, -40.0, 358.0};
  CHECK(la::max_abs_diff(sp::free_hamiltonian(s), oracle::free_h(s)) < 1e-9);
  CHECK(la::is_diagonal(sp::coupling_hamiltonian(s)));
  CHECK(la::max_abs_diff(sp::coupling_hamiltonian(s) + sp::offset_hamiltonian(s), sp::free_hamiltonian(s)) < 1e-12);
}

TEST_CASE("closed-form rotations equal exponentials of the rf generator") {
  for (double flip : {0.0, oracle::kPi / 2, oracle::kPi, -1.3}) {
    for (double phase : {0.0, oracle::kPi / 2, 2.0}) {
      const SpinSet targets{1, 3};
      const auto u = sp::rotation(targets, flip, phase);
      CHECK(la::max_abs_diff(u, oracle::propagate(oracle::transverse(0b101, phase), flip)) < 1e-13);
      const auto h = sp::rf_hamiltonian(targets, 1000.0, phase);
      CHECK(la::max_abs_diff(h, oracle::scaled(oracle::transverse(0b101, phase), 2 * oracle::kPi * 1000.0)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(sp::rf_hamiltonian(SpinSet{}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("z rotations and targets") {
  CHECK(la::max_abs_diff(sp::z_rotation(2, 0.7), oracle::propagate(oracle::spin_op(2, 'z'), 0.7)) < 1e-14);
  for (double kappa : {0.0, 0.3, 1.0, 1.7}) {
    CHECK(la::max_abs_diff(sp::target_trilinear(Axis::z, Axis::z, Axis::z, kappa), oracle::trilinear('z', 'z', 'z', kappa)) < 1e-12);
    CHECK(la::max_abs_diff(sp::target_trilinear(Axis::y, Axis::z, Axis::x, kappa), oracle::trilinear('y', 'z', 'x', kappa)) < 1e-12);
  }
  CHECK(sp::swap13_target() == oracle::swap13());
  // fidelity(I, U_zzz(1)) = cos(pi/4)
  CHECK(oracle::fidelity(oracle::eye(8), sp::target_trilinear(Axis::z, Axis::z, Axis::z, 1.0)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}
