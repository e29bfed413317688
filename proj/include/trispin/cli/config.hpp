#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "trispin/engine/settings.hpp"
#include "trispin/spin/spin_system.hpp"

namespace trispin::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simulation scenario. Defaults describe the 15N-acetamide amino group with the standard
/// proton/nitrogen rf amplitudes and a 10% FWHM, 11-point rf distribution.
struct ScenarioConfig {
  spin::SpinSystem system = spin::SpinSystem::acetamide();
  double design_j_hz = 88.0;
  double rf_proton_hz = 35.7e3;
  double rf_hetero_hz = 5.5e3;
  double rf_fwhm = 0.10;
  int rf_grid_points = 11;
  int dante_n = 0;  // 0: default segment count

  /// Settings for the requested mode. Realistic mode carries the rf distribution.
  engine::SimulationSettings settings(engine::PulseMode mode) const;
};

/// Flat "key = value" text; '#' starts a comment, blank lines are ignored. Keys:
///   j12 j23 j13           couplings, Hz
///   nu1 nu2 nu3           offsets, Hz
///   design_j              coupling the sequences are timed for, Hz
///   rf_proton_hz rf_hetero_hz rf_fwhm rf_grid_points
///   dante_n               DANTE segments (multiple of 4; 0 = default)
/// Unset keys keep their defaults. Throws ConfigError on unknown or repeated keys and bad values.
ScenarioConfig parse_config(std::string_view text);

/// Throws ConfigError when the file cannot be read or parsed.
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace trispin::cli
