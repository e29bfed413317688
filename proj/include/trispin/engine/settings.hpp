#pragma once

#include <array>
#include <optional>

#include "trispin/spin/spin_system.hpp"

namespace trispin::engine {

enum class PulseMode {
  ideal,      // hard pulses are instantaneous rotations
  realistic,  // hard pulses last flip / (2 pi amplitude) with the free Hamiltonian active
};

/// Gaussian distribution of rf amplitude scale factors.
struct RfInhomogeneity {
  double fwhm_fraction = 0.10;
  int grid_points = 11;  // odd, spanning +-2 sigma
};

struct SimulationSettings {
  PulseMode mode = PulseMode::ideal;
  double proton_amplitude_hz = 35.7e3;
  double heteronucleus_amplitude_hz = 5.5e3;
  std::optional<RfInhomogeneity> inhomogeneity;
  std::array<std::optional<double>, spin::kSpinCount> offset_overrides{};

  static SimulationSettings ideal() { return {}; }
  /// Finite pulses at the default amplitudes with a 10% FWHM rf distribution.
  static SimulationSettings realistic();

  double amplitude(spin::Channel c) const noexcept {
    return c == spin::Channel::proton ? proton_amplitude_hz : heteronucleus_amplitude_hz;
  }

  /// Throws std::invalid_argument when the settings are inconsistent.
  void validate() const;
};

/// Copy of sys with the settings' offset overrides applied.
spin::SpinSystem apply_overrides(const spin::SpinSystem& sys, const SimulationSettings& settings);

}  // namespace trispin::engine
