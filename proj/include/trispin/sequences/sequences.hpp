#pragma once

#include <array>
#include <string_view>

#include "trispin/pulse/program.hpp"

namespace trispin::sequences {

using pulse::PulseProgram;

/// The four constructions of U_zzz(kappa): selective decoupling (A), the conventional
/// sequence (B), the improved sequence (C) and the time-optimal geodesic sequence (D).
enum class Variant { A, B, C, D };

inline constexpr std::array<Variant, 4> kAllVariants{Variant::A, Variant::B, Variant::C, Variant::D};

std::string_view to_string(Variant v) noexcept;
/// Throws std::invalid_argument for anything but A-D (case-insensitive).
Variant parse_variant(std::string_view name);

inline constexpr double kKappaMax = 2.0;

/// Duration tau (in units of 1/J) and scaling factor s = kappa / (J tau).
struct DurationScaling {
  double tau = 0.0;
  double scaling = 0.0;
};

DurationScaling duration_scaling(Variant v, double kappa);

/// Maps kappa onto [0, 1] using tau*(2n +- kappa) = tau*(kappa).
double reduce_kappa(double kappa);

struct TheoreticalLimit {
  double reduced_kappa = 0.0;
  double tau = 0.0;      // 1/J units
  double scaling = 0.0;  // s*(0) is taken as 0
};

TheoreticalLimit theoretical_limit(double kappa);

/// Amplitude (Hz) of the geodesic sequence's weak pulse: (2 - kappa) J / sqrt(kappa (4 - kappa)).
double geodesic_weak_amplitude(double kappa, double j_hz);

/// Ideal delta-pulse program realizing U_zzz(kappa) on the chain J12 = J23 = j_hz, J13 = 0.
/// Throws std::domain_error for kappa outside [0, 2] or j_hz <= 0.
PulseProgram build_uzzz(Variant v, double kappa, double j_hz);

/// U_zzz(k) U_yzy(k) U_xzx(k) exp(i pi/2 I2z) with each trilinear factor built from
/// build_uzzz and 90-degree axis changes on spins 1 and 3. At kappa = 1 this is SWAP(1,3).
PulseProgram build_swap13(Variant v, double kappa, double j_hz);

struct SwapDurations {
  double direct = 0.0;          // SWAP(1,2) or SWAP(2,3), 3/(2J)
  double conventional13 = 0.0;  // via three direct SWAPs, 9/(2J)
  double optimal13 = 0.0;       // 3 tau*(1) = 3 sqrt(3)/(2J)
};

/// Throws std::domain_error for j_hz <= 0.
SwapDurations swap_duration_bookkeeping(double j_hz);

}  // namespace trispin::sequences
