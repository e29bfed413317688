#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "trispin/engine/density.hpp"
#include "trispin/engine/settings.hpp"
#include "trispin/pulse/program.hpp"
#include "trispin/spin/spin_system.hpp"

namespace trispin::engine {

/// Unitary of the whole program, later events multiplying from the left. `rf_scale` multiplies
/// every rf amplitude in realistic mode; ideal hard pulses ignore it. Offset overrides in
/// `settings` are applied to `sys` first. Throws std::invalid_argument on invalid settings.
ComplexMatrix propagator_of(const pulse::PulseProgram& program, const spin::SpinSystem& sys,
                            const SimulationSettings& settings, double rf_scale = 1.0);

struct EnsemblePoint {
  double scale = 1.0;
  double weight = 1.0;
};

/// Gaussian grid of rf scale factors over +-2 sigma with weights summing to 1. A single point at
/// scale 1 when inhomogeneity is off, the FWHM is 0, the grid has one point, or the mode is ideal.
std::vector<EnsemblePoint> rf_ensemble(const SimulationSettings& settings);

/// sum_i w_i metric(c_i) over rf_ensemble(settings).
double rf_ensemble_average(const std::function<double(double scale)>& metric, const SimulationSettings& settings);

/// U rho0 U^dagger, averaged over the rf ensemble when one applies.
DensityOperator evolve(const DensityOperator& rho0, const pulse::PulseProgram& program,
                       const spin::SpinSystem& sys, const SimulationSettings& settings);

/// Runs body(i) for i in [0, count) on a small worker pool. Callers write results by index, so
/// output order never depends on scheduling. The first exception thrown by a task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

struct ScanPoint {
  double offset_hz = 0.0;
  double value = 0.0;
};

/// Evaluates metric on copies of sys whose spins on `channel` have their offsets shifted by
/// o = lo, lo + step, ..., up to hi (inclusive within step/1e9). Throws std::invalid_argument for
/// step <= 0 or hi < lo.
std::vector<ScanPoint> offset_scan(const spin::SpinSystem& sys, spin::Channel channel, double lo_hz, double hi_hz,
                                   double step_hz, const std::function<double(const spin::SpinSystem&)>& metric);

}  // namespace trispin::engine
