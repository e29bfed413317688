#pragma once

#include <optional>
#include <vector>

#include "trispin/engine/settings.hpp"
#include "trispin/pulse/program.hpp"
#include "trispin/sequences/sequences.hpp"

namespace trispin::broadband {

using pulse::PulseProgram;

/// Parameters of the offset-compensating transformations.
struct BroadbandScheme {
  /// Phases (rad) of successive refocusing pi groups, applied cyclically in temporal order.
  /// All entries must be parallel or antiparallel to the first one.
  std::vector<double> refocus_cycle = default_cycle();
  /// DANTE segment count, a positive multiple of 4; 0 picks the smallest n with Delta <= 1/(20 J).
  int dante_segments = 0;
  /// Finite-pulse timing to compensate for. When set, an odd delay count is made even by giving
  /// the longest delay two groups, and each group is shifted within its delay so proton free
  /// precession (including idle time inside finite pulses) balances on both sides.
  std::optional<engine::SimulationSettings> pulse_timing;

  static std::vector<double> default_cycle();  // x, -x, -x, x
  void validate() const;
};

/// Splits every delay t into t/2 - pi(1,2,3) - t/2. Pulses and z-rotations that fall between an
/// odd number of inserted groups are mirrored into the toggling frame, and a trailing group is
/// appended when the count is odd, so the result equals the input's coupling-only propagator for
/// any offsets (ideal pulses). Throws std::invalid_argument on weak pulses.
PulseProgram refocus_offsets(const PulseProgram& program, const BroadbandScheme& scheme = {});

/// Smallest multiple of 4 with tau_D(kappa) / n <= 1 / (20 J); at least 4.
int default_dante_segments(double kappa, double j_hz);

/// Replaces every weak pulse (flip alpha, duration tau) by n hard pulses of alpha/n, each centered
/// in its own window of tau/n. Throws std::invalid_argument unless n is a positive multiple of 4.
PulseProgram dante_discretize(const PulseProgram& program, int n);

/// DANTE-discretized, offset-refocused geodesic sequence for U_zzz(kappa).
PulseProgram broadband_geodesic(double kappa, double j_hz, const BroadbandScheme& scheme = {});

/// Broadband U_zzz(kappa) for any variant (D goes through broadband_geodesic).
PulseProgram broadband_uzzz(sequences::Variant v, double kappa, double j_hz, const BroadbandScheme& scheme = {});

/// Broadband SWAP(1,3) composition.
PulseProgram broadband_swap13(sequences::Variant v, double kappa, double j_hz, const BroadbandScheme& scheme = {});

/// Inter-pulse delay of the hard-pulse selective element: 1 / (4 |dnu13|), 698 us at 358 Hz.
double selective_emulation_delay(double delta_nu13_hz);

/// Selective rotation of proton `target` (1 or 3) built from nonselective proton pulses:
///   (flip/2)_phase(1,3) - delta - 180x(2) - delta - 180x(2) (flip/2)_phase'(1,3)
/// with `carrier` the on-resonance proton and the other proton at +delta_nu13. phase' = phase when
/// the target is the carrier and phase + 180 otherwise. The off-resonance proton picks up a z
/// rotation of pi; a trailing ZRotation undoes it. Throws std::invalid_argument when
/// delta_nu13 is 0 or the spin indices are not protons 1/3.
PulseProgram emulate_selective_pulse(int target, double flip, double phase, double delta_nu13_hz, int carrier = 1);

/// Moves every ZRotation to the end of the program by shifting the phases of later pulses on that
/// spin by -angle, then drops it. The accumulated angle per spin is recorded as metadata
/// "receiver_phase.<k>" in degrees; input = Z(receiver phases) * output.
PulseProgram eliminate_z_rotations(const PulseProgram& program);

}  // namespace trispin::broadband
