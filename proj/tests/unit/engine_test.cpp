#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "oracles/oracles.hpp"
#include "trispin/broadband/broadband.hpp"
#include "trispin/engine/engine.hpp"
#include "trispin/linalg/expm.hpp"
#include "trispin/metrics/metrics.hpp"
#include "trispin/spin/operators.hpp"

namespace en = trispin::engine;
namespace sq = trispin::sequences;
namespace la = trispin::linalg;
using en::SimulationSettings;
using trispin::pulse::Delay;
using trispin::pulse::HardPulse;
using trispin::pulse::PulseProgram;
using trispin::pulse::WeakPulse;
using trispin::pulse::ZRotation;
using trispin::spin::Axis;
using trispin::spin::SpinSet;
using trispin::spin::SpinSystem;

namespace {

constexpr double kJ = 88.0;
constexpr double kPi = oracle::kPi;

SimulationSettings single_shot_realistic() {
  auto s = SimulationSettings::realistic();
  s.inhomogeneity.reset();
  return s;
}

PulseProgram mixed_program() {
  PulseProgram p("mixed");
  p.push(HardPulse{SpinSet{1, 3}, kPi / 2, 0.3});
  p.push(Delay{2.1e-3});
  p.push(WeakPulse{SpinSet{2}, 61.0, 4.0e-3, 1.1});
  p.push(ZRotation{3, -0.8});
  p.push(HardPulse{SpinSet::all(), kPi, kPi});
  p.push(Delay{0.7e-3});
  return p;
}

}  // namespace

TEST_CASE("settings validation") {
  auto s = SimulationSettings::realistic();
  CHECK_NOTHROW(s.validate());
  s.proton_amplitude_hz = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = SimulationSettings::realistic();
  s.inhomogeneity->grid_points = 10;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.inhomogeneity->grid_points = 11;
  s.inhomogeneity->fwhm_fraction = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS(en::propagator_of(PulseProgram{}, SpinSystem{}, s), std::invalid_argument);
}

TEST_CASE("ideal propagators match the brute-force oracle") {
  CHECK(en::propagator_of(PulseProgram{}, SpinSystem::acetamide(), SimulationSettings::ideal()) == la::ComplexMatrix::identity(8));
  auto sys = SpinSystem::acetamide();
  sys.offsets = {150.0, -80.0, 358.0};
  const auto p = mixed_program();
  CHECK(la::max_abs_diff(en::propagator_of(p, sys, SimulationSettings::ideal()), oracle::ideal_propagator(p, sys)) < 1e-10);

  PulseProgram delay;
  delay.push(Delay{1.0 / (2 * kJ)});
  const auto chain = SpinSystem::ideal_chain(kJ);
  CHECK(la::max_abs_diff(en::propagator_of(delay, chain, SimulationSettings::ideal()),
                         oracle::propagate(oracle::free_h(chain), 1.0 / (2 * kJ))) < 1e-12);

  const auto d = en::propagator_of(sq::build_uzzz(sq::Variant::D, 1.0, kJ), chain, SimulationSettings::ideal());
  CHECK(oracle::fidelity(d, oracle::trilinear('z', 'z', 'z', 1.0)) >= 1.0 - 1e-9);
}

TEST_CASE("offset overrides replace the system offsets") {
  SimulationSettings s;
  s.offset_overrides[0] = 500.0;
  PulseProgram p;
  p.push(Delay{1e-3});
  auto moved = SpinSystem::acetamide();
  moved.offsets[0] = 500.0;
  CHECK(la::max_abs_diff(en::propagator_of(p, SpinSystem::acetamide(), s),
                         en::propagator_of(p, moved, SimulationSettings::ideal())) < 1e-14);
}

TEST_CASE("realistic hard pulses evolve under H0 plus rf") {
  const auto s = single_shot_realistic();
  auto sys = SpinSystem::acetamide();
  // Single-channel pulse: one interval of flip / (2 pi amp).
  PulseProgram one;
  one.push(HardPulse{SpinSet{1}, kPi / 2, 0.4});
  const double w = 1.0 / (4 * 35.7e3);
  const auto ref = oracle::propagate(oracle::add(oracle::free_h(sys), oracle::transverse(0b001, 0.4), 2 * kPi * 35.7e3), w);
  CHECK(la::max_abs_diff(en::propagator_of(one, sys, s), ref) < 1e-10);

  // Joint pulse: channels start together, protons stop first.
  PulseProgram joint;
  joint.push(HardPulse{SpinSet::all(), kPi, 0.0});
  const double wp = 1.0 / (2 * 35.7e3);
  const double wn = 1.0 / (2 * 5.5e3);
  auto h_all = oracle::add(oracle::free_h(sys), oracle::transverse(0b101, 0.0), 2 * kPi * 35.7e3);
  h_all = oracle::add(h_all, oracle::transverse(0b010, 0.0), 2 * kPi * 5.5e3);
  const auto h_n = oracle::add(oracle::free_h(sys), oracle::transverse(0b010, 0.0), 2 * kPi * 5.5e3);
  const auto joint_ref = oracle::mul(oracle::propagate(h_n, wn - wp), oracle::propagate(h_all, wp));
  CHECK(la::max_abs_diff(en::propagator_of(joint, sys, s), joint_ref) < 1e-10);

  // Negative flips rotate about the opposite axis for the same width.
  PulseProgram neg;
  neg.push(HardPulse{SpinSet{2}, -kPi / 2, 0.0});
  PulseProgram pos;
  pos.push(HardPulse{SpinSet{2}, kPi / 2, kPi});
  CHECK(la::max_abs_diff(en::propagator_of(neg, sys, s), en::propagator_of(pos, sys, s)) < 1e-12);

  // rf scale changes the flip, not the width.
  PulseProgram scaled;
  scaled.push(HardPulse{SpinSet{1}, kPi / 2, 0.4});
  const auto ref_scaled =
      oracle::propagate(oracle::add(oracle::free_h(sys), oracle::transverse(0b001, 0.4), 2 * kPi * 35.7e3 * 0.9), w);
  CHECK(la::max_abs_diff(en::propagator_of(scaled, sys, s, 0.9), ref_scaled) < 1e-10);
}

TEST_CASE("propagators are unitary and compose") {
  const auto sys = SpinSystem::acetamide();
  const auto p1 = sq::build_uzzz(sq::Variant::C, 0.6, kJ);
  const auto p2 = mixed_program();
  for (const auto& s : {SimulationSettings::ideal(), single_shot_realistic()}) {
    const auto u1 = en::propagator_of(p1, sys, s);
    const auto u2 = en::propagator_of(p2, sys, s);
    CHECK(la::unitarity_deviation(u1) < 1e-9);
    CHECK(la::max_abs_diff(en::propagator_of(trispin::pulse::concat(p1, p2), sys, s), u2 * u1) < 1e-10);
  }
}

TEST_CASE("ideal mode ignores rf settings") {
  const auto p = sq::build_swap13(sq::Variant::B, 0.8, kJ);
  const auto sys = SpinSystem::acetamide();
  auto other = SimulationSettings::ideal();
  other.proton_amplitude_hz = 1.0;
  other.heteronucleus_amplitude_hz = 2.0;
  other.inhomogeneity = en::RfInhomogeneity{0.3, 5};
  CHECK(en::propagator_of(p, sys, other, 0.5) == en::propagator_of(p, sys, SimulationSettings::ideal()));
}

TEST_CASE("density operators") {
  CHECK_THROWS_AS(en::DensityOperator(la::ComplexMatrix(2, 2)), std::invalid_argument);
  la::ComplexMatrix skew(8, 8);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(en::DensityOperator{skew}, la::NotHermitianError);
  const en::DensityOperator rho(trispin::spin::spin_operator(1, Axis::x));
  CHECK(rho.trace() == doctest::Approx(0.0));
  CHECK(rho.project(trispin::spin::spin_operator(1, Axis::x)) == doctest::Approx(2.0));
}

TEST_CASE("evolve") {
  const auto sys = SpinSystem::ideal_chain(kJ);
  const auto swap = sq::build_swap13(sq::Variant::D, 1.0, kJ);
  const en::DensityOperator identity(la::ComplexMatrix::identity(8) * la::Complex(1.0 / 8));
  CHECK(la::max_abs_diff(en::evolve(identity, swap, sys, SimulationSettings::realistic()).matrix(), identity.matrix()) < 1e-12);

  const en::DensityOperator i1x(trispin::spin::spin_operator(1, Axis::x));
  const auto out = en::evolve(i1x, swap, sys, SimulationSettings::ideal());
  CHECK(la::max_abs_diff(out.matrix(), trispin::spin::spin_operator(3, Axis::x)) < 1e-9);

  const en::DensityOperator anti(trispin::spin::product_operator({{1, Axis::x}, {2, Axis::z}}));
  CHECK(la::max_abs_diff(en::evolve(anti, swap, sys, SimulationSettings::ideal()).matrix(),
                         trispin::spin::product_operator({{3, Axis::x}, {2, Axis::z}})) < 1e-9);

  const auto r = en::evolve(i1x, trispin::broadband::broadband_swap13(sq::Variant::C, 1.0, kJ), SpinSystem::acetamide(),
                            SimulationSettings::realistic());
  CHECK(r.trace() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(la::hermitian_deviation(r.matrix()) < 1e-10);
}

TEST_CASE("rf ensemble grid") {
  auto s = SimulationSettings::realistic();
  const auto grid = en::rf_ensemble(s);
  REQUIRE(grid.size() == 11);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    total += grid[i].weight;
    CHECK(grid[i].weight == doctest::Approx(grid[grid.size() - 1 - i].weight));
    CHECK(grid[i].scale - 1.0 == doctest::Approx(1.0 - grid[grid.size() - 1 - i].scale));
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(grid[5].scale == 1.0);
  const double sigma = 0.10 / (2 * std::sqrt(2 * std::log(2.0)));
  CHECK(grid.front().scale == doctest::Approx(1.0 - 2 * sigma));
  CHECK(grid[0].weight / grid[5].weight == doctest::Approx(std::exp(-2.0)));

  s.inhomogeneity->fwhm_fraction = 0.0;
  CHECK(en::rf_ensemble(s).size() == 1);
  CHECK(en::rf_ensemble(SimulationSettings::ideal()).size() == 1);
  CHECK(en::rf_ensemble_average([](double c) { return 3.0 * c; }, s) == doctest::Approx(3.0));
  // Linear metrics average to the center of a symmetric grid.
  CHECK(en::rf_ensemble_average([](double c) { return c; }, SimulationSettings::realistic()) == doctest::Approx(1.0));
}

TEST_CASE("ideal programs are ensemble invariant") {
  const auto p = sq::build_swap13(sq::Variant::A, 1.0, kJ);
  const en::DensityOperator i1x(trispin::spin::spin_operator(1, Axis::x));
  auto ideal_with_ensemble = SimulationSettings::ideal();
  ideal_with_ensemble.inhomogeneity = en::RfInhomogeneity{};
  CHECK(la::max_abs_diff(en::evolve(i1x, p, SpinSystem::ideal_chain(kJ), ideal_with_ensemble).matrix(),
                         en::evolve(i1x, p, SpinSystem::ideal_chain(kJ), SimulationSettings::ideal()).matrix()) < 1e-15);
}

TEST_CASE("parallel_for covers every index and propagates errors") {
  std::vector<int> hits(1000, 0);
  en::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  en::parallel_for(0, [](std::size_t) { FAIL("no work expected"); });
  CHECK_THROWS_AS(en::parallel_for(50, [](std::size_t i) { if (i == 17) throw std::runtime_error("boom"); }),
                  std::runtime_error);
}

TEST_CASE("offset scans") {
  const auto chain = SpinSystem::ideal_chain(kJ);
  const auto metric = [](const SpinSystem& s) { return s.offsets[0] + 10.0 * s.offsets[1]; };
  const auto scan = en::offset_scan(chain, trispin::spin::Channel::proton, -100.0, 100.0, 50.0, metric);
  REQUIRE(scan.size() == 5);
  CHECK(scan[0].offset_hz == -100.0);
  CHECK(scan[4].value == doctest::Approx(100.0));
  const auto single = en::offset_scan(chain, trispin::spin::Channel::proton, 0.0, 0.0, 1.0, metric);
  CHECK(single.size() == 1);
  CHECK_THROWS_AS(en::offset_scan(chain, trispin::spin::Channel::proton, 0.0, 1.0, 0.0, metric), std::invalid_argument);
  CHECK_THROWS_AS(en::offset_scan(chain, trispin::spin::Channel::proton, 1.0, 0.0, 1.0, metric), std::invalid_argument);
}

TEST_CASE("broadband geodesic covers the proton band with finite pulses") {
  const auto realistic = single_shot_realistic();
  trispin::broadband::BroadbandScheme scheme;
  scheme.pulse_timing = realistic;
  const auto broad = trispin::broadband::broadband_geodesic(1.0, kJ, scheme);
  const auto target = trispin::spin::target_trilinear(Axis::z, Axis::z, Axis::z, 1.0);
  const auto fid = [&](const PulseProgram& p) {
    return [&, p](const SpinSystem& s) { return trispin::metrics::fidelity(en::propagator_of(p, s, realistic), target); };
  };
  const auto chain = SpinSystem::ideal_chain(kJ);
  const auto band = en::offset_scan(chain, trispin::spin::Channel::proton, -1500.0, 1500.0, 250.0, fid(broad));
  for (const auto& pt : band) {
    CAPTURE(pt.offset_hz);
    CHECK(pt.value >= 0.98);
  }
  const auto wide = en::offset_scan(chain, trispin::spin::Channel::proton, -1750.0, 1750.0, 250.0, fid(broad));
  double peak = 0.0;
  for (const auto& pt : wide) peak = std::max(peak, pt.value);
  for (const auto& pt : wide) CHECK(pt.value >= 0.9 * peak);

}

TEST_CASE("offsets ruin the unrefocused geodesic sequence but not the broadband one") {
  auto off = SpinSystem::ideal_chain(kJ);
  off.offsets = {500.0, 500.0, 500.0};
  const auto target = trispin::spin::target_trilinear(Axis::z, Axis::z, Axis::z, 1.0);
  const auto fid = [&](const PulseProgram& p, const SpinSystem& s) {
    return trispin::metrics::fidelity(en::propagator_of(p, s, SimulationSettings::ideal()), target);
  };
  CHECK(fid(sq::build_uzzz(sq::Variant::D, 1.0, kJ), off) < 0.5);
  trispin::broadband::BroadbandScheme n64;
  n64.dante_segments = 64;
  CHECK(fid(trispin::broadband::broadband_geodesic(1.0, kJ, n64), off) >= 0.999);
  auto nitrogen_only = SpinSystem::ideal_chain(kJ);
  nitrogen_only.offsets[1] = 500.0;
  CHECK(fid(sq::build_uzzz(sq::Variant::D, 1.0, kJ), nitrogen_only) < 0.5);
}
