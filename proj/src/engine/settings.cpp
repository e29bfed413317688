#include "trispin/engine/settings.hpp"

#include <cmath>
#include <stdexcept>

namespace trispin::engine {

SimulationSettings SimulationSettings::realistic() {
  SimulationSettings s;
  s.mode = PulseMode::realistic;
  s.inhomogeneity = RfInhomogeneity{};
  return s;
}

void SimulationSettings::validate() const {
  if (mode == PulseMode::realistic) {
    if (!(proton_amplitude_hz > 0.0) || !(heteronucleus_amplitude_hz > 0.0)) {
      throw std::invalid_argument("realistic mode requires positive rf amplitudes on both channels");
    }
  }
  if (inhomogeneity) {
    const auto& inh = *inhomogeneity;
    if (!(inh.fwhm_fraction >= 0.0 && inh.fwhm_fraction < 1.0)) {
      throw std::invalid_argument("rf inhomogeneity FWHM fraction must lie in [0, 1)");
    }
    if (inh.grid_points < 1 || inh.grid_points % 2 == 0) {
      throw std::invalid_argument("rf inhomogeneity grid points must be a positive odd number");
    }
  }
  for (const auto& o : offset_overrides) {
    if (o && !std::isfinite(*o)) throw std::invalid_argument("offset override must be finite");
  }
}

spin::SpinSystem apply_overrides(const spin::SpinSystem& sys, const SimulationSettings& settings) {
  spin::SpinSystem out = sys;
  for (int k = 0; k < spin::kSpinCount; ++k) {
    if (settings.offset_overrides[k]) out.offsets[k] = *settings.offset_overrides[k];
  }
  return out;
}

}  // namespace trispin::engine
